#include "latil/characters.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>

#include "latil/errors.hpp"

namespace latil {

DualPoint::DualPoint(std::vector<Rat> exponents) : e_(std::move(exponents)) {
  for (Rat &q : e_) q = mod1(q);
}

DualPoint DualPoint::identity(int dim) {
  return DualPoint(std::vector<Rat>(static_cast<std::size_t>(dim), Rat(0)));
}

bool DualPoint::is_identity() const {
  for (const Rat &q : e_)
    if (sgn(q) != 0) return false;
  return true;
}

Int DualPoint::order() const {
  Int n(1);
  for (const Rat &q : e_) n = lcm(n, Int(q.get_den()));
  return n;
}

DualPoint DualPoint::add(const DualPoint &other) const {
  if (e_.size() != other.e_.size()) throw std::invalid_argument("dual point dimension mismatch");
  std::vector<Rat> s(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) s[i] = mod1(e_[i] + other.e_[i]);
  return DualPoint(std::move(s));
}

bool operator<(const DualPoint &a, const DualPoint &b) {
  for (std::size_t i = 0; i < a.e_.size() && i < b.e_.size(); ++i) {
    int c = cmp(a.e_[i], b.e_[i]);
    if (c != 0) return c < 0;
  }
  return a.e_.size() < b.e_.size();
}

std::string DualPoint::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) s += ",";
    s += e_[i].get_str();
  }
  return s + ")";
}

Rat char_exponent(const DualPoint &z, const Vec &v) {
  if (z.dim() != static_cast<int>(v.size()))
    throw std::invalid_argument("character argument dimension mismatch");
  Rat s(0);
  for (std::size_t i = 0; i < v.size(); ++i) s += Rat(v[i]) * z.exponents()[i];
  return mod1(s);
}

bool is_dual_point(const Lattice &l, const DualPoint &z) {
  if (z.dim() != l.dim()) throw std::invalid_argument("dual point dimension mismatch");
  for (int j = 0; j < l.dim(); ++j)
    if (sgn(char_exponent(z, l.basis().column(j))) != 0) return false;
  return true;
}

std::vector<DualPoint> dual_group(const Lattice &l) {
  const int d = l.dim();
  const SmithDecomposition &s = l.smith();
  // With U1 * N * U2 diagonal, z is dual iff N^T e is integral iff
  // f = U1^{-T} e has f_i in (1/a_i) Z; enumerate f and map back by U1^T.
  std::vector<DualPoint> out;
  std::vector<long> idx(d, 0);
  std::vector<long> bound(d);
  for (int i = 0; i < d; ++i) bound[i] = to_long(s.diag[i], "invariant factor");
  for (;;) {
    std::vector<Rat> e(d, Rat(0));
    for (int i = 0; i < d; ++i) {
      if (idx[i] == 0) continue;
      Rat f(Int(idx[i]), s.diag[i]);
      f.canonicalize();
      for (int j = 0; j < d; ++j) e[j] += f * Rat(s.left(i, j));
    }
    for (Rat &q : e) q = mod1(q);
    out.emplace_back(std::move(e));
    int k = d - 1;
    while (k >= 0 && ++idx[k] == bound[k]) idx[k--] = 0;
    if (k < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DualPoint> dual_group_via_adjugate(const Lattice &l) {
  const int d = l.dim();
  const Int &delta = l.determinant();
  long n = to_long(delta, "determinant");
  IntMatrix m = adjugate(l.basis());
  std::set<DualPoint> out;
  std::vector<long> idx(d, 0);
  for (;;) {
    std::vector<Rat> e(d);
    for (int k = 0; k < d; ++k) {
      Int num(0);
      for (int i = 0; i < d; ++i) num += Int(idx[i]) * m(k, i);
      Rat q(num, delta);
      q.canonicalize();
      e[k] = mod1(q);
    }
    out.insert(DualPoint(std::move(e)));
    int k = d - 1;
    while (k >= 0 && ++idx[k] == n) idx[k--] = 0;
    if (k < 0) break;
  }
  return std::vector<DualPoint>(out.begin(), out.end());
}

CycloSum CycloSum::rational(const Rat &c) {
  CycloSum s;
  if (sgn(c) != 0) s.terms_[Int(0)] = c;
  return s;
}

CycloSum CycloSum::root_of_unity(const Rat &exponent, const Rat &coeff) {
  CycloSum s;
  if (sgn(coeff) == 0) return s;
  Rat e = mod1(exponent);
  s.order_ = e.get_den();
  s.terms_[Int(e.get_num())] = coeff;
  return s;
}

void CycloSum::raise_order(const Int &n) {
  if (n == order_) return;
  Int scale;
  mpz_divexact(scale.get_mpz_t(), n.get_mpz_t(), order_.get_mpz_t());
  std::map<Int, Rat> raised;
  for (const auto &[r, c] : terms_) raised.emplace(r * scale, c);
  terms_ = std::move(raised);
  order_ = n;
}

CycloSum &CycloSum::operator+=(const CycloSum &other) {
  Int n = lcm(order_, other.order_);
  raise_order(n);
  Int scale;
  mpz_divexact(scale.get_mpz_t(), n.get_mpz_t(), other.order_.get_mpz_t());
  for (const auto &[r, c] : other.terms_) {
    Int key = r * scale;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), c);
    } else {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
  return *this;
}

CycloSum &CycloSum::operator-=(const CycloSum &other) {
  CycloSum neg = other;
  neg.scale(Rat(-1));
  return *this += neg;
}

CycloSum &CycloSum::scale(const Rat &c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto &[r, v] : terms_) v *= c;
  return *this;
}

CycloSum CycloSum::rotated(const Rat &exponent) const {
  CycloSum out;
  for (const auto &[r, c] : terms_) {
    Rat q(r, order_);
    q.canonicalize();
    out += root_of_unity(mod1(exponent + q), c);
  }
  return out;
}

const std::vector<Int> &cyclotomic_poly(unsigned long n) {
  static std::mutex mu;
  static std::map<unsigned long, std::vector<Int>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // Exact division of x^n - 1 by the cyclotomic polynomials of the proper
  // divisors, computed recursively inside the same cache.
  std::function<const std::vector<Int> &(unsigned long)> get =
      [&](unsigned long m) -> const std::vector<Int> & {
    auto hit = cache.find(m);
    if (hit != cache.end()) return hit->second;
    std::vector<Int> poly(m + 1, Int(0));
    poly[0] = -1;
    poly[m] = 1;
    for (unsigned long d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      const std::vector<Int> &phi = get(d);
      // synthetic division by the monic phi, asserting exactness
      std::vector<Int> q(poly.size() - phi.size() + 1, Int(0));
      for (long k = static_cast<long>(q.size()) - 1; k >= 0; --k) {
        Int coeff = poly[k + phi.size() - 1];
        if (is_zero(coeff)) continue;
        q[k] = coeff;
        for (std::size_t i = 0; i < phi.size(); ++i) poly[k + i] -= coeff * phi[i];
      }
      for (const Int &rem : poly)
        if (!is_zero(rem)) throw std::logic_error("cyclotomic division not exact");
      poly = std::move(q);
    }
    return cache.emplace(m, std::move(poly)).first->second;
  };
  return get(n);
}

bool CycloSum::is_zero() const {
  if (terms_.empty()) return true;
  if (order_ == 1) return false; // a single nonzero rational term
  unsigned long n = static_cast<unsigned long>(to_long(order_, "cyclotomic order"));
  std::vector<Rat> poly(n, Rat(0));
  for (const auto &[r, c] : terms_) poly[static_cast<std::size_t>(to_long(r))] = c;
  const std::vector<Int> &phi = cyclotomic_poly(n);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t k = n; k-- > deg;) {
    if (sgn(poly[k]) == 0) continue;
    Rat coeff = poly[k];
    for (std::size_t i = 0; i < phi.size(); ++i) poly[k - deg + i] -= coeff * Rat(phi[i]);
  }
  for (std::size_t i = 0; i < deg; ++i)
    if (sgn(poly[i]) != 0) return false;
  return true;
}

bool CycloSum::equals_rational(const Rat &c) const {
  CycloSum diff = *this;
  diff -= rational(c);
  return diff.is_zero();
}

std::string CycloSum::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto &[r, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    s += c.get_str();
    if (sgn(r) != 0) s += "*w" + order_.get_str() + "^" + r.get_str();
  }
  return s;
}

CycloSum orthogonality_sum(const Lattice &l, const DualPoint &z) {
  if (!is_dual_point(l, z)) throw std::invalid_argument("point is not dual to the lattice");
  const int d = l.dim();
  const IntMatrix &h = l.basis();
  const Int &detv = l.determinant();
  IntMatrix cof = adjugate(h); // column j of the true adjugate is row j of cof
  // Walk the canonical residues and shift each into the half-open
  // fundamental parallelepiped { H t : 0 <= t_i < 1 }.
  std::vector<long> idx(d, 0);
  std::vector<long> bound(d);
  for (int i = 0; i < d; ++i) bound[i] = to_long(h(i, i), "basis diagonal");
  CycloSum sum;
  for (;;) {
    Vec r(d);
    for (int i = 0; i < d; ++i) r[i] = idx[i];
    // y = H^{-1} r; p = H * (y - floor(y)) = r - H * floor(y)
    Vec fl(d);
    for (int i = 0; i < d; ++i) {
      Int num(0);
      for (int j = 0; j < d; ++j) num += cof(j, i) * r[j];
      fl[i] = fdiv(num, detv);
    }
    Vec p = r;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) p[i] -= h(i, j) * fl[j];
    sum += CycloSum::root_of_unity(char_exponent(z, p), Rat(1));
    int k = d - 1;
    while (k >= 0 && ++idx[k] == bound[k]) idx[k--] = 0;
    if (k < 0) break;
  }
  return sum;
}

} // namespace latil
