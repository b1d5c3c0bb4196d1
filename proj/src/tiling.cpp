#include "latil/tiling.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "latil/boxenum.hpp"
#include "latil/errors.hpp"

namespace latil {

TilingInstance::TilingInstance(int dim, std::vector<LatticeTranslate> translates)
    : dim_(dim), translates_(std::move(translates)) {
  if (dim_ < 1) throw std::invalid_argument("instance dimension must be positive");
  if (translates_.empty()) throw std::invalid_argument("instance needs at least one translate");
  for (const LatticeTranslate &t : translates_)
    if (t.dim() != dim_) throw std::invalid_argument("translate dimension mismatch");
  std::vector<LatticeTranslate> sorted = translates_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i - 1] == sorted[i])
      throw std::invalid_argument("duplicate translate in instance");
}

std::string Witness::str() const {
  switch (kind) {
    case Kind::uncovered_point:
      return "uncovered point " + to_string(point);
    case Kind::doubly_covered_point:
      return "multiply covered point " + to_string(point);
    case Kind::character_failure:
      return "character sum at dual point " + dual->str() + " is " + value->str();
  }
  return "";
}

bool cosets_disjoint(const LatticeTranslate &a, const LatticeTranslate &b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("translate dimension mismatch");
  Vec diff(a.offset().size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = b.offset()[i] - a.offset()[i];
  return !a.lattice().sum(b.lattice()).member(diff);
}

Rat density_sum(const TilingInstance &t) {
  Rat s(0);
  for (const LatticeTranslate &tr : t.translates()) {
    Rat d(Int(1), tr.lattice().determinant());
    d.canonicalize();
    s += d;
  }
  return s;
}

std::vector<Int> period_extents(const TilingInstance &t) {
  std::vector<Int> p(static_cast<std::size_t>(t.dim()), Int(1));
  for (const LatticeTranslate &tr : t.translates()) {
    const std::vector<Int> &polar = tr.lattice().polar_values();
    for (int k = 0; k < t.dim(); ++k) p[k] = lcm(p[k], polar[k]);
  }
  return p;
}

namespace {

Vec decode_box_index(long idx, const std::vector<long> &extents) {
  Vec p(extents.size());
  for (std::size_t k = extents.size(); k-- > 0;) {
    p[k] = idx % extents[k];
    idx /= extents[k];
  }
  return p;
}

} // namespace

VerificationReport is_tiling_box_oracle(const TilingInstance &t, long box_volume_cap) {
  VerificationReport rep;
  rep.method = VerifyMethod::box_oracle;
  std::vector<Int> extents = period_extents(t);
  Int vol(1);
  for (const Int &p : extents) vol *= p;
  if (vol > box_volume_cap)
    throw box_limit_error("period box volume " + to_string(vol) + " exceeds cap " +
                          std::to_string(box_volume_cap));
  const long v = to_long(vol);
  std::vector<long> ext(extents.size());
  for (std::size_t k = 0; k < extents.size(); ++k) ext[k] = to_long(extents[k]);

  std::vector<std::uint16_t> cover(static_cast<std::size_t>(v), 0);
  for (const LatticeTranslate &tr : t.translates()) {
    for_each_coset_point_in_box(tr, extents, [&](const Vec &p) {
      long idx = 0;
      for (std::size_t k = 0; k < p.size(); ++k) idx = idx * ext[k] + p[k].get_si();
      if (cover[static_cast<std::size_t>(idx)] != UINT16_MAX)
        ++cover[static_cast<std::size_t>(idx)];
    });
  }
  for (long i = 0; i < v; ++i) {
    if (cover[static_cast<std::size_t>(i)] == 1) continue;
    Witness w;
    w.kind = cover[static_cast<std::size_t>(i)] == 0 ? Witness::Kind::uncovered_point
                                                     : Witness::Kind::doubly_covered_point;
    w.point = decode_box_index(i, ext);
    rep.witnesses.push_back(std::move(w));
    rep.is_tiling = false;
    return rep;
  }
  rep.is_tiling = true;
  return rep;
}

namespace {

// Explicit common point of two meeting cosets, for witness reporting:
// decompose v_b - v_a over the columns of [B_a | B_b].
Vec common_point(const LatticeTranslate &a, const LatticeTranslate &b) {
  const int d = a.dim();
  IntMatrix m(d, 2 * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      m(i, j) = a.lattice().basis()(i, j);
      m(i, d + j) = b.lattice().basis()(i, j);
    }
  ColumnReduction r = column_reduce(m);
  IntMatrix h(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) h(i, j) = r.h(i, j);
  Vec diff(d);
  for (int i = 0; i < d; ++i) diff[i] = b.offset()[i] - a.offset()[i];
  auto y = solve_lower_triangular(h, diff);
  if (!y) throw std::logic_error("common_point called on disjoint cosets");
  Vec full(2 * d, Int(0));
  for (int i = 0; i < d; ++i) full[i] = (*y)[i];
  Vec coeff = r.u.apply(full);
  Vec w = a.offset();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) w[i] += a.lattice().basis()(i, j) * coeff[j];
  return w;
}

} // namespace

VerificationReport is_tiling_fast(const TilingInstance &t) {
  VerificationReport rep;
  rep.method = VerifyMethod::disjoint_density;
  const int n = t.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!cosets_disjoint(t[i], t[j])) {
        Witness w;
        w.kind = Witness::Kind::doubly_covered_point;
        w.point = common_point(t[i], t[j]);
        rep.witnesses.push_back(std::move(w));
        rep.is_tiling = false;
        return rep;
      }
  if (density_sum(t) == 1) {
    rep.is_tiling = true;
    return rep;
  }
  // Disjoint but short of density 1: some point inside the period box is
  // uncovered; report the lexicographically first.
  std::vector<Int> extents = period_extents(t);
  Vec p(static_cast<std::size_t>(t.dim()), Int(0));
  for (;;) {
    bool covered = false;
    for (int j = 0; j < n && !covered; ++j) covered = t[j].contains_point(p);
    if (!covered) break;
    int k = t.dim() - 1;
    while (k >= 0) {
      ++p[k];
      if (p[k] < extents[static_cast<std::size_t>(k)]) break;
      p[k] = 0;
      --k;
    }
    if (k < 0) throw std::logic_error("density below 1 but period box fully covered");
  }
  Witness w;
  w.kind = Witness::Kind::uncovered_point;
  w.point = std::move(p);
  rep.witnesses.push_back(std::move(w));
  rep.is_tiling = false;
  return rep;
}

CycloSum character_sum(const TilingInstance &t, const DualPoint &z) {
  CycloSum s;
  for (const LatticeTranslate &tr : t.translates()) {
    if (!is_dual_point(tr.lattice(), z)) continue;
    Rat coeff(Int(1), tr.lattice().determinant());
    coeff.canonicalize();
    s += CycloSum::root_of_unity(char_exponent(z, tr.offset()), coeff);
  }
  return s;
}

VerificationReport verify_character_formula(const TilingInstance &t) {
  VerificationReport rep;
  rep.method = VerifyMethod::character_formula;
  std::set<DualPoint> points;
  for (const LatticeTranslate &tr : t.translates())
    for (DualPoint &z : dual_group(tr.lattice())) points.insert(std::move(z));
  for (const DualPoint &z : points) {
    CycloSum s = character_sum(t, z);
    bool ok = z.is_identity() ? s.equals_rational(Rat(1)) : s.is_zero();
    if (!ok) {
      Witness w;
      w.kind = Witness::Kind::character_failure;
      w.dual = z;
      w.value = std::move(s);
      rep.witnesses.push_back(std::move(w));
      rep.is_tiling = false;
      return rep;
    }
  }
  rep.is_tiling = true;
  return rep;
}

std::vector<std::pair<int, int>> translation_pairs(const TilingInstance &t) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < t.size(); ++i)
    for (int j = i + 1; j < t.size(); ++j)
      if (t[i].lattice() == t[j].lattice()) out.emplace_back(i, j);
  return out;
}

namespace {

// Largest prime-power divisibility pairing: for every index and every prime
// power dividing its value, some other index must be divisible by it too.
bool prime_power_pairing(const std::vector<Int> &values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (const auto &[p, k] : factorize(values[i])) {
      Int pk(1);
      for (int e = 0; e < k; ++e) pk *= p;
      bool paired = false;
      for (std::size_t j = 0; j < values.size() && !paired; ++j)
        paired = j != i && is_zero(fmod(values[j], pk));
      if (!paired) return false;
    }
  }
  return true;
}

} // namespace

std::map<std::string, CheckResult> check_theorems(const TilingInstance &t, bool assume_tiling) {
  const char *keys[] = {"pairwise_det_gcd",
                        "prime_power_pairing",
                        "dual_point_in_two_groups",
                        "exactly_two_groups_equal_det",
                        "same_det_pair_exists",
                        "max_det_cyclic_implies_translation",
                        "multiplicity_prime_power_implies_translation_2d",
                        "order_quotient_prime_power_pairing"};
  std::map<std::string, CheckResult> out;
  if (!assume_tiling && !is_tiling_fast(t).is_tiling) {
    for (const char *k : keys) out[k] = CheckResult::not_applicable;
    return out;
  }
  const int n = t.size();
  std::vector<Int> dets;
  dets.reserve(static_cast<std::size_t>(n));
  for (const LatticeTranslate &tr : t.translates()) dets.push_back(tr.lattice().determinant());

  // pairwise gcd of determinants
  {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j) ok = gcd(dets[i], dets[j]) > 1;
    out["pairwise_det_gcd"] = ok ? CheckResult::pass : CheckResult::fail;
  }
  out["prime_power_pairing"] =
      prime_power_pairing(dets) ? CheckResult::pass : CheckResult::fail;

  // dual-point incidence structure
  std::map<DualPoint, std::vector<int>> incidence;
  for (int j = 0; j < n; ++j)
    for (DualPoint &z : dual_group(t[j].lattice())) {
      if (z.is_identity()) continue;
      incidence[std::move(z)].push_back(j);
    }
  {
    bool pairs_ok = true, det_ok = true, quot_ok = true;
    for (const auto &[z, members] : incidence) {
      if (members.size() < 2) pairs_ok = false;
      if (members.size() == 2 && dets[static_cast<std::size_t>(members[0])] !=
                                     dets[static_cast<std::size_t>(members[1])])
        det_ok = false;
      // determinant / point order over the incident members must pair up
      // prime-power-wise
      std::vector<Int> quotients;
      Int ord = z.order();
      for (int j : members) {
        Int q;
        mpz_divexact(q.get_mpz_t(), dets[static_cast<std::size_t>(j)].get_mpz_t(),
                     ord.get_mpz_t());
        quotients.push_back(std::move(q));
      }
      if (!prime_power_pairing(quotients)) quot_ok = false;
    }
    out["dual_point_in_two_groups"] = pairs_ok ? CheckResult::pass : CheckResult::fail;
    out["exactly_two_groups_equal_det"] = det_ok ? CheckResult::pass : CheckResult::fail;
    out["order_quotient_prime_power_pairing"] =
        quot_ok ? CheckResult::pass : CheckResult::fail;
  }

  // some pair of equal determinants
  if (n < 2) {
    out["same_det_pair_exists"] = CheckResult::not_applicable;
  } else {
    std::vector<Int> sorted = dets;
    std::sort(sorted.begin(), sorted.end());
    bool ok = false;
    for (std::size_t i = 1; i < sorted.size() && !ok; ++i) ok = sorted[i - 1] == sorted[i];
    out["same_det_pair_exists"] = ok ? CheckResult::pass : CheckResult::fail;
  }

  const bool has_translation_pair = !translation_pairs(t).empty();

  // maximal-determinant member cyclic => translation pair exists
  {
    Int maxdet(0);
    for (const Int &d : dets) maxdet = std::max(maxdet, d);
    bool hyp = false;
    for (int j = 0; j < n; ++j)
      if (dets[static_cast<std::size_t>(j)] == maxdet && t[j].lattice().is_cyclic()) hyp = true;
    out["max_det_cyclic_implies_translation"] =
        (!hyp || has_translation_pair) ? CheckResult::pass : CheckResult::fail;
  }

  // dimension-2 multiplicity criterion under the (det/e desc, det desc) order
  if (t.dim() != 2) {
    out["multiplicity_prime_power_implies_translation_2d"] = CheckResult::not_applicable;
  } else {
    int first = 0;
    Rat best(-1);
    Int best_det(0);
    for (int j = 0; j < n; ++j) {
      Int e = t[j].lattice().multiplicity();
      Rat key(dets[static_cast<std::size_t>(j)], e);
      key.canonicalize();
      if (key > best || (key == best && dets[static_cast<std::size_t>(j)] > best_det)) {
        best = key;
        best_det = dets[static_cast<std::size_t>(j)];
        first = j;
      }
    }
    bool hyp = is_prime_power(t[first].lattice().multiplicity());
    out["multiplicity_prime_power_implies_translation_2d"] =
        (!hyp || has_translation_pair) ? CheckResult::pass : CheckResult::fail;
  }
  return out;
}

bool max_det_cyclicity_ambiguous(const TilingInstance &t) {
  Int maxdet(0);
  for (const LatticeTranslate &tr : t.translates())
    maxdet = std::max(maxdet, tr.lattice().determinant());
  bool any_cyclic = false, any_acyclic = false;
  for (const LatticeTranslate &tr : t.translates())
    if (tr.lattice().determinant() == maxdet)
      (tr.lattice().is_cyclic() ? any_cyclic : any_acyclic) = true;
  return any_cyclic && any_acyclic;
}

namespace {

// Local-coordinate instance of selected members inside the coset w + T:
// pulls every member back through the basis of T. Requires each member to
// lie inside the coset.
TilingInstance local_instance(const TilingInstance &t, const std::vector<int> &subset,
                              const Lattice &coarse, const Vec &w) {
  const int d = t.dim();
  const IntMatrix &ht = coarse.basis();
  std::vector<LatticeTranslate> locals;
  for (int idx : subset) {
    const LatticeTranslate &tr = t[idx];
    IntMatrix local_basis(d, d);
    for (int j = 0; j < d; ++j) {
      auto col = solve_lower_triangular(ht, tr.lattice().basis().column(j));
      if (!col) throw std::invalid_argument("member lattice not contained in the coarse lattice");
      for (int i = 0; i < d; ++i) local_basis(i, j) = (*col)[i];
    }
    Vec diff(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) diff[static_cast<std::size_t>(i)] = tr.offset()[i] - w[i];
    auto off = solve_lower_triangular(ht, diff);
    if (!off) throw std::invalid_argument("member offset not inside the coarse coset");
    locals.emplace_back(Lattice::from_columns(local_basis), *off);
  }
  return TilingInstance(d, std::move(locals));
}

} // namespace

std::optional<SplitResult> find_split(const TilingInstance &t, int max_subset_size,
                                      long long subset_budget) {
  const int n = t.size();
  const int d = t.dim();
  long long examined = 0;
  int top = std::min(max_subset_size, n - 1);
  for (int s = 2; s <= top; ++s) {
    std::vector<int> I(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) I[static_cast<std::size_t>(i)] = i;
    for (;;) {
      if (++examined > subset_budget)
        throw budget_error("split search exceeded the subset budget of " +
                           std::to_string(subset_budget));
      // candidate coarse lattice: the span of the member lattices and the
      // offset differences within the subset
      std::vector<Vec> gens;
      const Vec &w = t[I[0]].offset();
      for (int idx : I) {
        for (int j = 0; j < d; ++j) gens.push_back(t[idx].lattice().basis().column(j));
        Vec diff(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) diff[static_cast<std::size_t>(i)] = t[idx].offset()[i] - w[i];
        gens.push_back(std::move(diff));
      }
      Lattice coarse = Lattice::from_generators(d, gens);
      TilingInstance local = local_instance(t, I, coarse, w);
      if (is_tiling_box_oracle(local).is_tiling)
        return SplitResult{I, LatticeTranslate(coarse, w)};
      // next combination in lexicographic order
      int k = s - 1;
      while (k >= 0 && I[static_cast<std::size_t>(k)] == n - s + k) --k;
      if (k < 0) break;
      ++I[static_cast<std::size_t>(k)];
      for (int j = k + 1; j < s; ++j)
        I[static_cast<std::size_t>(j)] = I[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return std::nullopt;
}

TilingInstance split_translate(const TilingInstance &t, int index,
                               const std::vector<LatticeTranslate> &refinement) {
  if (index < 0 || index >= t.size()) throw std::invalid_argument("translate index out of range");
  const LatticeTranslate &target = t[index];
  std::vector<LatticeTranslate> locals;
  const IntMatrix &ht = target.lattice().basis();
  const int d = t.dim();
  for (const LatticeTranslate &r : refinement) {
    if (r.dim() != d) throw std::invalid_argument("refinement dimension mismatch");
    IntMatrix local_basis(d, d);
    for (int j = 0; j < d; ++j) {
      auto col = solve_lower_triangular(ht, r.lattice().basis().column(j));
      if (!col)
        throw std::invalid_argument("refinement member lattice not inside the target lattice");
      for (int i = 0; i < d; ++i) local_basis(i, j) = (*col)[i];
    }
    Vec diff(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) diff[static_cast<std::size_t>(i)] = r.offset()[i] - target.offset()[i];
    auto off = solve_lower_triangular(ht, diff);
    if (!off) throw std::invalid_argument("refinement member offset outside the target coset");
    locals.emplace_back(Lattice::from_columns(local_basis), *off);
  }
  if (!is_tiling_box_oracle(TilingInstance(d, std::move(locals))).is_tiling)
    throw std::invalid_argument("refinement does not tile the target coset");
  std::vector<LatticeTranslate> out;
  out.reserve(t.translates().size() + refinement.size() - 1);
  for (int i = 0; i < t.size(); ++i) {
    if (i == index) {
      for (const LatticeTranslate &r : refinement) out.push_back(r);
    } else {
      out.push_back(t[i]);
    }
  }
  return TilingInstance(d, std::move(out));
}

} // namespace latil
