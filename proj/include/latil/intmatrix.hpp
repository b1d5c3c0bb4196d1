#pragma once

#include <optional>
#include <vector>

#include "latil/numeric.hpp"

namespace latil {

/// Dense integer matrix with exact arbitrary-precision entries, row-major.
class IntMatrix {
public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols, Int(0)) {}

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int &at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Int &at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
  Int &operator()(int i, int j) { return at(i, j); }
  const Int &operator()(int i, int j) const { return at(i, j); }

  Vec column(int j) const;
  Vec row(int i) const;
  IntMatrix transposed() const;

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  void negate_row(int i);
  void negate_col(int j);
  // row i += f * row j, resp. col i += f * col j
  void add_row(int i, int j, const Int &f);
  void add_col(int i, int j, const Int &f);

  friend bool operator==(const IntMatrix &a, const IntMatrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const IntMatrix &a, const IntMatrix &b) { return !(a == b); }
  // Lexicographic on (rows, cols, entries); canonical sort order.
  friend bool operator<(const IntMatrix &a, const IntMatrix &b);

  friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b);
  Vec apply(const Vec &v) const; // matrix * column vector

  std::string str() const;

private:
  int rows_, cols_;
  std::vector<Int> e_;
};

/// Exact signed determinant (Bareiss fraction-free elimination).
Int det(const IntMatrix &m);

/// Cofactor matrix M with M^T * N = N * M^T = det(N) * I, integer entries.
IntMatrix adjugate(const IntMatrix &m);

/// Canonical column-style Hermite normal form of a d x k matrix whose
/// columns generate a rank-d subgroup of Z^d: the unique d x d lower
/// triangular basis with positive diagonal and, within each row, the
/// entries left of the diagonal reduced into [0, diagonal).
/// Throws rank_error if the columns do not span full rank.
IntMatrix hermite_normal_form(const IntMatrix &m);

/// Column reduction of an arbitrary d x k matrix with transform tracking:
/// m * u = h where u is k x k unimodular and h is the column echelon
/// (staircase) form; `rank` counts the nonzero columns of h.
struct ColumnReduction {
  IntMatrix h;
  IntMatrix u;
  int rank;
};
ColumnReduction column_reduce(const IntMatrix &m);

/// Z-basis of { x : m * x = 0 }, returned as the columns of a k x (k - rank)
/// matrix.
IntMatrix kernel_basis(const IntMatrix &m);

/// left * m * right = diag(factors) with unimodular transforms and the
/// invariant factors in increasing divisibility order a_1 | a_2 | ... | a_d.
struct SmithDecomposition {
  IntMatrix left;
  std::vector<Int> diag;
  IntMatrix right;
};

/// Smith normal form of a square nonsingular matrix; throws
/// std::invalid_argument on non-square or singular input.
SmithDecomposition smith_normal_form(const IntMatrix &m);

/// Integral solution of h * x = rhs for lower-triangular h with nonzero
/// diagonal; nullopt when the solution is not integral.
std::optional<Vec> solve_lower_triangular(const IntMatrix &h, const Vec &rhs);

} // namespace latil
