#include "latil/genfun.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "latil/boxenum.hpp"
#include "latil/errors.hpp"

namespace latil {

void LatticePolynomial::add_term(const Vec &exponent, const Int &coeff) {
  if (static_cast<int>(exponent.size()) != dim_)
    throw std::invalid_argument("exponent vector dimension mismatch");
  if (is_zero(coeff)) return;
  auto it = terms_.find(exponent);
  if (it == terms_.end()) {
    terms_.emplace(exponent, coeff);
  } else {
    it->second += coeff;
    if (is_zero(it->second)) terms_.erase(it);
  }
}

LatticePolynomial &LatticePolynomial::operator+=(const LatticePolynomial &other) {
  for (const auto &[e, c] : other.terms_) add_term(e, c);
  return *this;
}

LatticePolynomial &LatticePolynomial::operator-=(const LatticePolynomial &other) {
  for (const auto &[e, c] : other.terms_) add_term(e, Int(-c));
  return *this;
}

LatticePolynomial operator*(const LatticePolynomial &a, const LatticePolynomial &b) {
  LatticePolynomial p(a.dim_);
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_) {
      Vec e(ea.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      p.add_term(e, ca * cb);
    }
  return p;
}

Int LatticePolynomial::degree(int coordinate) const {
  Int d(-1);
  for (const auto &[e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(coordinate)]);
  return d;
}

CycloSum LatticePolynomial::eval(const DualPoint &z) const {
  if (z.dim() != dim_) throw std::invalid_argument("evaluation point dimension mismatch");
  CycloSum s;
  for (const auto &[e, c] : terms_) s += CycloSum::root_of_unity(char_exponent(z, e), Rat(c));
  return s;
}

std::string LatticePolynomial::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto &[e, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    bool unit = (c == 1);
    if (!unit) s += c.get_str();
    bool any = false;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (is_zero(e[k])) continue;
      if (any || !unit) s += "*";
      any = true;
      s += "x" + std::to_string(k + 1);
      if (e[k] != 1) s += "^" + e[k].get_str();
    }
    if (!any && unit) s += "1";
  }
  return s;
}

LatticePolynomial numerator(const LatticeTranslate &t) {
  LatticePolynomial p(t.dim());
  for_each_coset_point_in_box(t, t.lattice().polar_values(),
                              [&](const Vec &w) { p.add_term(w, Int(1)); });
  return p;
}

namespace {

void require_polar_roots(const Lattice &l, const DualPoint &z) {
  const std::vector<Int> &t = l.polar_values();
  for (int k = 0; k < l.dim(); ++k) {
    Rat e = z.exponents()[static_cast<std::size_t>(k)] * Rat(t[static_cast<std::size_t>(k)]);
    if (sgn(mod1(e)) != 0)
      throw std::invalid_argument("point does not satisfy the polar root condition");
  }
}

} // namespace

bool translate_numerator_identity_check(const LatticeTranslate &t, const DualPoint &z) {
  require_polar_roots(t.lattice(), z);
  CycloSum lhs = numerator(t).eval(z);
  LatticeTranslate base(t.lattice(), Vec(t.offset().size(), Int(0)));
  CycloSum rhs = numerator(base).eval(z).rotated(char_exponent(z, t.offset()));
  lhs -= rhs;
  return lhs.is_zero();
}

bool r_vanishing_check(const Lattice &l, const DualPoint &z) {
  require_polar_roots(l, z);
  CycloSum value = numerator(LatticeTranslate(l, Vec(static_cast<std::size_t>(l.dim()), Int(0)))).eval(z);
  if (is_dual_point(l, z)) {
    Int count(1);
    for (const Int &t : l.polar_values()) count *= t;
    Rat expected(count, l.determinant());
    expected.canonicalize();
    return value.equals_rational(expected);
  }
  return value.is_zero();
}

bool verify_fund_identity(const TilingInstance &t, FundIdentityRoute route, long box_volume_cap) {
  const int d = t.dim();
  std::vector<Int> ell = period_extents(t);

  if (route == FundIdentityRoute::evaluation) {
    // Cleared-denominator polynomial evaluated at the dual-candidate
    // points. At a point with z_m^{ell_m} = 1 the per-coordinate factor
    // (x^ell - 1)/(x^t - 1) = sum_j x^{jt} evaluates to ell/t when
    // z_m^t = 1 and to 0 otherwise.
    std::set<DualPoint> points;
    for (const LatticeTranslate &tr : t.translates())
      for (DualPoint &z : dual_group(tr.lattice())) points.insert(std::move(z));
    for (const DualPoint &z : points) {
      CycloSum total;
      for (const LatticeTranslate &tr : t.translates()) {
        const std::vector<Int> &polar = tr.lattice().polar_values();
        Rat factor(1);
        bool vanished = false;
        for (int m = 0; m < d && !vanished; ++m) {
          Rat root = z.exponents()[static_cast<std::size_t>(m)] *
                     Rat(polar[static_cast<std::size_t>(m)]);
          if (sgn(mod1(root)) != 0) {
            vanished = true;
          } else {
            Rat g(ell[static_cast<std::size_t>(m)], polar[static_cast<std::size_t>(m)]);
            g.canonicalize();
            factor *= g;
          }
        }
        if (vanished) continue;
        CycloSum part = numerator(tr).eval(z);
        part.scale(factor);
        total += part;
      }
      if (z.is_identity()) {
        Int vol(1);
        for (const Int &e : ell) vol *= e;
        if (!total.equals_rational(Rat(vol))) return false;
      } else if (!total.is_zero()) {
        return false;
      }
    }
    return true;
  }

  // Symbolic route: the cleared identity is a polynomial with degree below
  // ell_m in each coordinate; accumulate its coefficients densely over the
  // corresponding box. Each member contributes its coset indicator there,
  // and the right-hand side subtracts 1 everywhere.
  Int vol(1);
  for (const Int &e : ell) vol *= e;
  if (vol > box_volume_cap)
    throw box_limit_error("cleared polynomial support " + to_string(vol) + " exceeds cap " +
                          std::to_string(box_volume_cap));
  const long v = to_long(vol);
  std::vector<long> ext(ell.size());
  for (std::size_t k = 0; k < ell.size(); ++k) ext[k] = to_long(ell[k]);
  std::vector<std::int32_t> coeff(static_cast<std::size_t>(v), -1);
  for (const LatticeTranslate &tr : t.translates()) {
    for_each_coset_point_in_box(tr, ell, [&](const Vec &p) {
      long idx = 0;
      for (std::size_t k = 0; k < p.size(); ++k) idx = idx * ext[k] + p[k].get_si();
      ++coeff[static_cast<std::size_t>(idx)];
    });
  }
  for (long i = 0; i < v; ++i)
    if (coeff[static_cast<std::size_t>(i)] != 0) return false;
  return true;
}

} // namespace latil
