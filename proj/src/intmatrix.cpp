#include "latil/intmatrix.hpp"

#include <algorithm>
#include <stdexcept>

#include "latil/errors.hpp"

namespace latil {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vec IntMatrix::column(int j) const {
  Vec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

Vec IntMatrix::row(int i) const {
  Vec v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = at(i, j);
  return t;
}

void IntMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(int i, int j) {
  if (i == j) return;
  for (int k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::negate_row(int i) {
  for (int k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

void IntMatrix::negate_col(int j) {
  for (int k = 0; k < rows_; ++k) at(k, j) = -at(k, j);
}

void IntMatrix::add_row(int i, int j, const Int &f) {
  for (int k = 0; k < cols_; ++k) at(i, k) += f * at(j, k);
}

void IntMatrix::add_col(int i, int j, const Int &f) {
  for (int k = 0; k < rows_; ++k) at(k, i) += f * at(k, j);
}

bool operator<(const IntMatrix &a, const IntMatrix &b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
  for (std::size_t i = 0; i < a.e_.size(); ++i) {
    int c = cmp(a.e_[i], b.e_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Int &aik = a(i, k);
      if (is_zero(aik)) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vec IntMatrix::apply(const Vec &v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw std::invalid_argument("matrix-vector shape mismatch");
  Vec r(rows_, Int(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

std::string IntMatrix::str() const {
  std::string s;
  for (int i = 0; i < rows_; ++i) {
    s += "[";
    for (int j = 0; j < cols_; ++j) {
      if (j) s += " ";
      s += at(i, j).get_str();
    }
    s += "]";
    if (i + 1 < rows_) s += "\n";
  }
  return s;
}

Int det(const IntMatrix &m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const int n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (is_zero(a(k, k))) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (!is_zero(a(i, k))) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  Int d = a(n - 1, n - 1);
  return sign < 0 ? Int(-d) : d;
}

IntMatrix adjugate(const IntMatrix &m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("adjugate of non-square matrix");
  const int n = m.rows();
  IntMatrix adj(n, n);
  if (n == 0) return adj;
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  IntMatrix minor(n - 1, n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc) = m(r, c);
          ++cc;
        }
        ++rr;
      }
      Int cof = det(minor);
      adj(i, j) = ((i + j) % 2 == 0) ? cof : Int(-cof);
    }
  return adj;
}

namespace {

// Shared column-elimination core. Processes rows top to bottom, gathering a
// pivot for each row among the not-yet-pivoted columns by a Euclidean gcd
// loop, then reducing the columns left of the pivot into canonical range.
// When `u` is non-null the same column operations are mirrored on it.
struct Echelon {
  IntMatrix h;
  int rank;
  std::vector<int> pivot_rows;
};

Echelon echelonize(IntMatrix a, IntMatrix *u) {
  const int rows = a.rows();
  const int cols = a.cols();
  int c = 0;
  Echelon out;
  for (int i = 0; i < rows && c < cols; ++i) {
    // Euclidean elimination across columns c..cols-1 in row i.
    for (;;) {
      int p = -1;
      for (int j = c; j < cols; ++j)
        if (!is_zero(a(i, j)) &&
            (p < 0 || mpz_cmpabs(a(i, j).get_mpz_t(), a(i, p).get_mpz_t()) < 0))
          p = j;
      if (p < 0) break; // row i has no pivot among remaining columns
      if (p != c) {
        a.swap_cols(c, p);
        if (u) u->swap_cols(c, p);
      }
      if (sgn(a(i, c)) < 0) {
        a.negate_col(c);
        if (u) u->negate_col(c);
      }
      bool clean = true;
      for (int j = c + 1; j < cols; ++j) {
        if (is_zero(a(i, j))) continue;
        Int q = fdiv(a(i, j), a(i, c));
        if (!is_zero(q)) {
          a.add_col(j, c, -q);
          if (u) u->add_col(j, c, -q);
        }
        if (!is_zero(a(i, j))) clean = false;
      }
      if (clean) break;
    }
    if (is_zero(a(i, c))) continue; // rank deficiency in this row
    // Canonical reduction of the columns before the pivot, row i.
    for (int j = 0; j < c; ++j) {
      Int q = fdiv(a(i, j), a(i, c));
      if (!is_zero(q)) {
        a.add_col(j, c, -q);
        if (u) u->add_col(j, c, -q);
      }
    }
    out.pivot_rows.push_back(i);
    ++c;
  }
  out.rank = c;
  out.h = std::move(a);
  return out;
}

} // namespace

IntMatrix hermite_normal_form(const IntMatrix &m) {
  const int d = m.rows();
  if (m.cols() < d) throw rank_error("fewer generators than the dimension");
  Echelon e = echelonize(m, nullptr);
  if (e.rank != d)
    throw rank_error("generators span rank " + std::to_string(e.rank) + " < " +
                     std::to_string(d));
  IntMatrix h(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) h(i, j) = e.h(i, j);
  return h;
}

ColumnReduction column_reduce(const IntMatrix &m) {
  IntMatrix u = IntMatrix::identity(m.cols());
  Echelon e = echelonize(m, &u);
  return ColumnReduction{std::move(e.h), std::move(u), e.rank};
}

IntMatrix kernel_basis(const IntMatrix &m) {
  ColumnReduction r = column_reduce(m);
  const int k = m.cols();
  IntMatrix ker(k, k - r.rank);
  for (int j = r.rank; j < k; ++j)
    for (int i = 0; i < k; ++i) ker(i, j - r.rank) = r.u(i, j);
  return ker;
}

SmithDecomposition smith_normal_form(const IntMatrix &m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("Smith form of non-square matrix");
  const int n = m.rows();
  IntMatrix d = m;
  IntMatrix u1 = IntMatrix::identity(n);
  IntMatrix u2 = IntMatrix::identity(n);

  auto lone = [&](int s) {
    for (int i = s + 1; i < n; ++i)
      if (!is_zero(d(i, s))) return false;
    for (int j = s + 1; j < n; ++j)
      if (!is_zero(d(s, j))) return false;
    return true;
  };

  for (int s = 0; s < n; ++s) {
    for (;;) {
      // Move the minimal nonzero |entry| of the trailing block to (s,s).
      int bi = -1, bj = -1;
      for (int i = s; i < n; ++i)
        for (int j = s; j < n; ++j)
          if (!is_zero(d(i, j)) &&
              (bi < 0 || mpz_cmpabs(d(i, j).get_mpz_t(), d(bi, bj).get_mpz_t()) < 0)) {
            bi = i;
            bj = j;
          }
      if (bi < 0) throw std::invalid_argument("Smith form of singular matrix");
      if (bi != s) {
        d.swap_rows(s, bi);
        u1.swap_rows(s, bi);
      }
      if (bj != s) {
        d.swap_cols(s, bj);
        u2.swap_cols(s, bj);
      }
      for (int i = s + 1; i < n; ++i)
        if (!is_zero(d(i, s))) {
          Int q = fdiv(d(i, s), d(s, s));
          d.add_row(i, s, -q);
          u1.add_row(i, s, -q);
        }
      for (int j = s + 1; j < n; ++j)
        if (!is_zero(d(s, j))) {
          Int q = fdiv(d(s, j), d(s, s));
          d.add_col(j, s, -q);
          u2.add_col(j, s, -q);
        }
      if (!lone(s)) continue;
      // Divisibility fixup: fold a non-divisible entry into row s and redo.
      int fi = -1, fj = -1;
      for (int i = s + 1; i < n && fi < 0; ++i)
        for (int j = s + 1; j < n; ++j)
          if (!is_zero(fmod(d(i, j), d(s, s)))) {
            fi = i;
            fj = j;
            break;
          }
      if (fi < 0) break;
      d.add_row(s, fi, Int(1));
      u1.add_row(s, fi, Int(1));
    }
    if (sgn(d(s, s)) < 0) {
      d.negate_row(s);
      u1.negate_row(s);
    }
  }

  SmithDecomposition out;
  out.left = std::move(u1);
  out.right = std::move(u2);
  out.diag.resize(n);
  for (int i = 0; i < n; ++i) out.diag[i] = d(i, i);
  return out;
}

std::optional<Vec> solve_lower_triangular(const IntMatrix &h, const Vec &rhs) {
  const int d = h.rows();
  Vec x(d);
  for (int i = 0; i < d; ++i) {
    Int num = rhs[i];
    for (int j = 0; j < i; ++j) num -= h(i, j) * x[j];
    if (!is_zero(fmod(num, h(i, i)))) return std::nullopt;
    mpz_divexact(x[i].get_mpz_t(), num.get_mpz_t(), h(i, i).get_mpz_t());
  }
  return x;
}

} // namespace latil
