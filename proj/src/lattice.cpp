#include "latil/lattice.hpp"

#include <stdexcept>

#include "latil/errors.hpp"

namespace latil {

Lattice Lattice::from_hnf(IntMatrix hnf) {
  auto data = std::make_shared<Data>();
  Int d(1);
  for (int i = 0; i < hnf.rows(); ++i) d *= hnf(i, i);
  data->hnf = std::move(hnf);
  data->det = std::move(d);
  return Lattice(std::move(data));
}

Lattice Lattice::from_columns(const IntMatrix &columns) {
  if (columns.rows() < 1) throw std::invalid_argument("lattice dimension must be positive");
  return from_hnf(hermite_normal_form(columns));
}

Lattice Lattice::from_generators(int dim, const std::vector<Vec> &generators) {
  if (dim < 1) throw std::invalid_argument("lattice dimension must be positive");
  IntMatrix m(dim, static_cast<int>(generators.size()));
  for (std::size_t j = 0; j < generators.size(); ++j) {
    if (static_cast<int>(generators[j].size()) != dim)
      throw std::invalid_argument("generator length does not match dimension");
    for (int i = 0; i < dim; ++i) m(i, static_cast<int>(j)) = generators[j][i];
  }
  return from_columns(m);
}

Lattice Lattice::standard(int dim) {
  if (dim < 1) throw std::invalid_argument("lattice dimension must be positive");
  return from_hnf(IntMatrix::identity(dim));
}

Lattice Lattice::diagonal(const Vec &entries) {
  IntMatrix m(static_cast<int>(entries.size()), static_cast<int>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (sgn(entries[i]) <= 0) throw std::invalid_argument("diagonal entries must be positive");
    m(static_cast<int>(i), static_cast<int>(i)) = entries[i];
  }
  return from_hnf(std::move(m));
}

bool Lattice::member(const Vec &v) const {
  if (static_cast<int>(v.size()) != dim())
    throw std::invalid_argument("vector length does not match lattice dimension");
  return solve_lower_triangular(d_->hnf, v).has_value();
}

Vec Lattice::reduce(const Vec &v) const {
  const IntMatrix &h = d_->hnf;
  const int d = h.rows();
  if (static_cast<int>(v.size()) != d)
    throw std::invalid_argument("vector length does not match lattice dimension");
  Vec r = v;
  for (int j = 0; j < d; ++j) {
    Int q = fdiv(r[j], h(j, j));
    if (is_zero(q)) continue;
    for (int i = j; i < d; ++i) r[i] -= q * h(i, j);
  }
  return r;
}

const std::vector<Int> &Lattice::polar_values() const {
  std::lock_guard<std::mutex> lk(d_->mu);
  if (!d_->polar) {
    const IntMatrix &h = d_->hnf;
    const int d = h.rows();
    // t * e_j is in L iff t * H^{-1} e_j is integral; with A * H = det * I
    // the minimal such t is det / gcd(det, gcd of column j of A).
    IntMatrix adjT = adjugate(h); // column j of the true adjugate is row j here
    std::vector<Int> t(d);
    for (int j = 0; j < d; ++j) {
      Int g(0);
      for (int i = 0; i < d; ++i) g = gcd(g, adjT(j, i));
      g = gcd(g, d_->det);
      Int tj;
      mpz_divexact(tj.get_mpz_t(), d_->det.get_mpz_t(), g.get_mpz_t());
      t[j] = tj;
    }
    d_->polar = std::move(t);
  }
  return *d_->polar;
}

const SmithDecomposition &Lattice::smith() const {
  std::lock_guard<std::mutex> lk(d_->mu);
  if (!d_->smith) d_->smith = smith_normal_form(d_->hnf);
  return *d_->smith;
}

const std::vector<Int> &Lattice::invariant_factors() const { return smith().diag; }

Int Lattice::multiplicity() const {
  const std::vector<Int> &f = invariant_factors();
  Int e;
  mpz_divexact(e.get_mpz_t(), d_->det.get_mpz_t(), f.back().get_mpz_t());
  return e;
}

bool Lattice::is_cyclic() const {
  const std::vector<Int> &f = invariant_factors();
  bool by_factors = f.size() < 2 || f[f.size() - 2] == 1;
  IntMatrix adj = adjugate(d_->hnf);
  Int g(0);
  for (int i = 0; i < adj.rows(); ++i)
    for (int j = 0; j < adj.cols(); ++j) g = gcd(g, adj(i, j));
  bool by_adjugate = (g == 1);
  if (by_factors != by_adjugate)
    throw std::logic_error("cyclicity criteria disagree for " + d_->hnf.str());
  return by_factors;
}

Lattice Lattice::sum(const Lattice &other) const {
  const int d = dim();
  if (other.dim() != d) throw std::invalid_argument("lattice dimension mismatch");
  IntMatrix m(d, 2 * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      m(i, j) = d_->hnf(i, j);
      m(i, d + j) = other.d_->hnf(i, j);
    }
  return from_columns(m);
}

Lattice Lattice::intersect(const Lattice &other) const {
  const int d = dim();
  if (other.dim() != d) throw std::invalid_argument("lattice dimension mismatch");
  // x in both lattices iff x = A a = B b; solve A a - B b = 0 over Z.
  IntMatrix stacked(d, 2 * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      stacked(i, j) = d_->hnf(i, j);
      stacked(i, d + j) = -other.d_->hnf(i, j);
    }
  IntMatrix ker = kernel_basis(stacked);
  IntMatrix gens(d, ker.cols());
  for (int c = 0; c < ker.cols(); ++c)
    for (int i = 0; i < d; ++i) {
      Int s(0);
      for (int j = 0; j < d; ++j) s += d_->hnf(i, j) * ker(j, c);
      gens(i, c) = s;
    }
  return from_columns(gens);
}

bool Lattice::contains(const Lattice &other) const {
  for (int j = 0; j < other.dim(); ++j)
    if (!member(other.basis().column(j))) return false;
  return true;
}

bool operator<(const Lattice &a, const Lattice &b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  int c = cmp(a.determinant(), b.determinant());
  if (c != 0) return c < 0;
  return a.basis() < b.basis();
}

LatticeTranslate::LatticeTranslate(Lattice lattice, const Vec &offset)
    : lattice_(std::move(lattice)), offset_(lattice_.reduce(offset)) {}

bool LatticeTranslate::contains_point(const Vec &v) const {
  Vec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] - offset_[i];
  return lattice_.member(w);
}

bool operator<(const LatticeTranslate &a, const LatticeTranslate &b) {
  if (a.lattice_ != b.lattice_) return a.lattice_ < b.lattice_;
  return lex_less(a.offset_, b.offset_);
}

} // namespace latil
