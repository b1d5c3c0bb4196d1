#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace latil {

// All lattice arithmetic is exact: arbitrary-precision integers and
// rationals throughout, no machine-word fast paths.
using Int = mpz_class;
using Rat = mpq_class;
using Vec = std::vector<Int>;

inline Int gcd(const Int &a, const Int &b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int lcm(const Int &a, const Int &b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Floor division (round toward -infinity), matching coset reduction needs.
inline Int fdiv(const Int &a, const Int &b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int fmod(const Int &a, const Int &b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Ceiling division (round toward +infinity).
inline Int cdiv(const Int &a, const Int &b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Fractional part in [0,1).
inline Rat mod1(const Rat &q) {
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rat r = q - Rat(fl);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Int &a) { return mpz_sgn(a.get_mpz_t()) == 0; }

// Overflow-checked conversion for use as container sizes / indices.
inline long to_long(const Int &a, const char *what = "value") {
  if (!a.fits_slong_p())
    throw std::overflow_error(std::string(what) + " does not fit a machine word");
  return a.get_si();
}

inline std::string to_string(const Int &a) { return a.get_str(); }
inline std::string to_string(const Rat &q) { return q.get_str(); }

inline std::string to_string(const Vec &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

inline bool lex_less(const Vec &a, const Vec &b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

// Prime factorization by trial division; adequate for the determinant
// ranges this library works with.
inline std::vector<std::pair<Int, int>> factorize(Int n) {
  std::vector<std::pair<Int, int>> out;
  if (n < 0) n = -n;
  for (Int p(2); p * p <= n; p += (p == 2 ? 1 : 2)) {
    int k = 0;
    while (is_zero(fmod(n, p))) {
      n /= p;
      ++k;
    }
    if (k) out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_prime_power(const Int &n) {
  if (n < 2) return false;
  return factorize(n).size() == 1;
}

} // namespace latil
