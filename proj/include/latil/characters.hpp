#pragma once

#include <map>
#include <vector>

#include "latil/lattice.hpp"
#include "latil/numeric.hpp"

namespace latil {

/// Point of the d-torus with every coordinate a root of unity, stored as
/// the exact exponent vector: coordinate k is exp(2*pi*i*exponents[k]) with
/// each exponent a rational reduced into [0,1). Never a floating value.
class DualPoint {
public:
  explicit DualPoint(std::vector<Rat> exponents);
  static DualPoint identity(int dim);

  int dim() const { return static_cast<int>(e_.size()); }
  const std::vector<Rat> &exponents() const { return e_; }
  bool is_identity() const;
  /// Order as a group element: lcm of the exponent denominators.
  Int order() const;
  /// Group operation (coordinatewise exponent addition mod 1).
  DualPoint add(const DualPoint &other) const;

  friend bool operator==(const DualPoint &a, const DualPoint &b) { return a.e_ == b.e_; }
  friend bool operator!=(const DualPoint &a, const DualPoint &b) { return !(a == b); }
  friend bool operator<(const DualPoint &a, const DualPoint &b);

  std::string str() const;

private:
  std::vector<Rat> e_;
};

/// chi_z(v) as its exact exponent: sum_k v_k * exponents_k mod 1.
Rat char_exponent(const DualPoint &z, const Vec &v);

bool is_dual_point(const Lattice &l, const DualPoint &z);

/// All det(L) dual points of L, enumerated through the Smith decomposition
/// and returned sorted.
std::vector<DualPoint> dual_group(const Lattice &l);

/// Independent enumeration through the adjugate parametrization; only
/// sensible for small determinants (O(det^d) work). Cross-check route.
std::vector<DualPoint> dual_group_via_adjugate(const Lattice &l);

/// Finite formal sum of rational multiples of roots of unity of a common
/// order N, with sound and complete exact zero testing.
class CycloSum {
public:
  CycloSum() : order_(1) {}
  static CycloSum rational(const Rat &c);
  /// coeff * exp(2*pi*i*exponent)
  static CycloSum root_of_unity(const Rat &exponent, const Rat &coeff);

  const Int &order() const { return order_; }
  const std::map<Int, Rat> &terms() const { return terms_; }

  CycloSum &operator+=(const CycloSum &other);
  friend CycloSum operator+(CycloSum a, const CycloSum &b) { return a += b; }
  CycloSum &operator-=(const CycloSum &other);
  CycloSum &scale(const Rat &c);
  /// Multiplication by exp(2*pi*i*exponent).
  CycloSum rotated(const Rat &exponent) const;

  /// Exact zero test: the represented complex number is 0 iff the residue
  /// polynomial is divisible by the N-th cyclotomic polynomial.
  bool is_zero() const;
  bool equals_rational(const Rat &c) const;

  std::string str() const;

private:
  void raise_order(const Int &n);
  Int order_;
  std::map<Int, Rat> terms_; // residue mod order -> nonzero coefficient
};

/// Coefficients of the n-th cyclotomic polynomial, ascending degree;
/// monic of degree phi(n). Results are memoized.
const std::vector<Int> &cyclotomic_poly(unsigned long n);

/// Sum of chi_z over the integer points of the fundamental parallelepiped
/// of L. Requires z dual to L; det(L) at the identity, zero elsewhere.
CycloSum orthogonality_sum(const Lattice &l, const DualPoint &z);

} // namespace latil
