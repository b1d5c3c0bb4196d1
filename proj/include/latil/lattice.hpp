#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "latil/intmatrix.hpp"
#include "latil/numeric.hpp"

namespace latil {

/// Full-rank sublattice of Z^d held in canonical Hermite-form basis.
/// Immutable value type; copies share the derived-quantity cache, and the
/// lazily computed fields are published under a lock so concurrent reads
/// are safe.
class Lattice {
public:
  /// Canonical lattice spanned over Z by the given generator vectors.
  /// Throws rank_error when the generators do not span rank d.
  static Lattice from_generators(int dim, const std::vector<Vec> &generators);
  /// Same, with generators as the columns of a d x k matrix.
  static Lattice from_columns(const IntMatrix &columns);
  /// Z^d itself.
  static Lattice standard(int dim);
  /// Diagonal lattice  a_1 Z x ... x a_d Z.
  static Lattice diagonal(const Vec &entries);

  int dim() const { return d_->hnf.rows(); }
  const IntMatrix &basis() const { return d_->hnf; }
  const Int &determinant() const { return d_->det; }

  bool member(const Vec &v) const;
  /// Canonical coset representative: the unique w == v (mod L) with
  /// 0 <= w_i < basis(i,i) for every coordinate.
  Vec reduce(const Vec &v) const;

  /// Polar values t_j = min{ t > 0 : t*e_j in L }, one per coordinate.
  const std::vector<Int> &polar_values() const;
  const SmithDecomposition &smith() const;
  /// Invariant factors of Z^d / L in increasing divisibility order.
  const std::vector<Int> &invariant_factors() const;
  /// determinant / largest invariant factor (gcd of basis entries in 2D).
  Int multiplicity() const;
  /// Whether Z^d / L is cyclic. Evaluated both through the invariant
  /// factors and through the gcd of the adjugate entries; a disagreement
  /// is a logic error.
  bool is_cyclic() const;

  /// Smallest lattice containing both (basis-union span).
  Lattice sum(const Lattice &other) const;
  /// Largest lattice contained in both.
  Lattice intersect(const Lattice &other) const;
  bool contains(const Lattice &other) const;

  friend bool operator==(const Lattice &a, const Lattice &b) {
    return a.d_ == b.d_ || a.d_->hnf == b.d_->hnf;
  }
  friend bool operator!=(const Lattice &a, const Lattice &b) { return !(a == b); }
  /// Deterministic order: (dim, determinant, basis entries).
  friend bool operator<(const Lattice &a, const Lattice &b);

private:
  struct Data {
    IntMatrix hnf;
    Int det;
    mutable std::mutex mu;
    mutable std::optional<std::vector<Int>> polar;
    mutable std::optional<SmithDecomposition> smith;
  };
  explicit Lattice(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static Lattice from_hnf(IntMatrix hnf);
  std::shared_ptr<const Data> d_;
};

/// A lattice coset v + L with the offset stored in canonical reduced form,
/// so equality of translates is structural.
class LatticeTranslate {
public:
  LatticeTranslate(Lattice lattice, const Vec &offset);

  const Lattice &lattice() const { return lattice_; }
  const Vec &offset() const { return offset_; }
  int dim() const { return lattice_.dim(); }

  bool contains_point(const Vec &v) const;

  friend bool operator==(const LatticeTranslate &a, const LatticeTranslate &b) {
    return a.lattice_ == b.lattice_ && a.offset_ == b.offset_;
  }
  friend bool operator!=(const LatticeTranslate &a, const LatticeTranslate &b) {
    return !(a == b);
  }
  /// Deterministic order: (determinant, basis, offset).
  friend bool operator<(const LatticeTranslate &a, const LatticeTranslate &b);

private:
  Lattice lattice_;
  Vec offset_;
};

} // namespace latil
