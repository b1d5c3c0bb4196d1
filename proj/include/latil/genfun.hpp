#pragma once

#include <map>
#include <string>
#include <vector>

#include "latil/characters.hpp"
#include "latil/lattice.hpp"
#include "latil/tiling.hpp"

namespace latil {

/// Sparse multivariate polynomial with integer coefficients, keyed by
/// non-negative exponent vectors. Carrier for the box numerators of the
/// lattice generating functions.
class LatticePolynomial {
public:
  explicit LatticePolynomial(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  const std::map<Vec, Int> &terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Vec &exponent, const Int &coeff);
  LatticePolynomial &operator+=(const LatticePolynomial &other);
  LatticePolynomial &operator-=(const LatticePolynomial &other);
  friend LatticePolynomial operator*(const LatticePolynomial &a, const LatticePolynomial &b);

  /// Largest exponent in the given coordinate (-1 when zero).
  Int degree(int coordinate) const;
  /// Exact value at a torus point, as a cyclotomic sum.
  CycloSum eval(const DualPoint &z) const;

  std::string str() const; // sorted human-readable monomials

private:
  int dim_;
  std::map<Vec, Int> terms_;
};

/// Numerator of the generating function of v + L over the polar box of L:
/// the monomial sum over the box points of the coset. Exactly
/// t_1...t_d / det(L) monomials.
LatticePolynomial numerator(const LatticeTranslate &t);

/// Checks the translate/numerator relation at a point z with z^{t_k} = 1
/// coordinatewise: the translate numerator equals chi_z(v) times the
/// lattice numerator. Throws when z violates the polar-root precondition.
bool translate_numerator_identity_check(const LatticeTranslate &t, const DualPoint &z);

/// At a polar-root point z: the lattice numerator vanishes iff z is not a
/// dual point; at dual points it equals t_1...t_d / det(L). Returns whether
/// the applicable identity holds. Throws on precondition violation.
bool r_vanishing_check(const Lattice &l, const DualPoint &z);

enum class FundIdentityRoute { symbolic, evaluation };

/// Whether the sum of the member generating functions equals the generating
/// function of Z^d, as an identity of rational functions. Equivalent to the
/// tiling condition. The symbolic route clears denominators per coordinate
/// and tests the resulting polynomial for zero; the evaluation route tests
/// the cleared polynomial at every dual-candidate point.
bool verify_fund_identity(const TilingInstance &t,
                          FundIdentityRoute route = FundIdentityRoute::symbolic,
                          long box_volume_cap = kDefaultBoxVolumeCap);

} // namespace latil
