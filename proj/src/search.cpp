#include "latil/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "latil/errors.hpp"

namespace latil {

void SearchStats::merge(const SearchStats &other) {
  multisets += other.multisets;
  nodes += other.nodes;
  for (const auto &[k, v] : other.prune_counts) prune_counts[k] += v;
}

std::vector<Lattice> enumerate_sublattices(int dim, const Int &det) {
  if (dim < 1 || det < 1) throw std::invalid_argument("dimension and index must be positive");
  std::vector<Lattice> out;
  IntMatrix h(dim, dim);
  // all canonical Hermite bases: positive diagonal with the given product,
  // row entries left of the diagonal in [0, diagonal)
  auto fill_offdiag = [&](auto &&self, int i, int j) -> void {
    if (i == dim) {
      out.push_back(Lattice::from_columns(h));
      return;
    }
    if (j == i) {
      self(self, i + 1, 0);
      return;
    }
    for (Int v(0); v < h(i, i); ++v) {
      h(i, j) = v;
      self(self, i, j + 1);
    }
    h(i, j) = 0;
  };
  auto choose_diag = [&](auto &&self, int i, const Int &rest) -> void {
    if (i == dim) {
      if (rest == 1) fill_offdiag(fill_offdiag, 0, 0);
      return;
    }
    for (Int a(1); a <= rest; ++a) {
      if (!is_zero(fmod(rest, a))) continue;
      h(i, i) = a;
      Int next;
      mpz_divexact(next.get_mpz_t(), rest.get_mpz_t(), a.get_mpz_t());
      self(self, i + 1, next);
    }
  };
  choose_diag(choose_diag, 0, det);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct LatticePool {
  std::mutex mu;
  int dim;
  std::map<Int, std::vector<Lattice>> by_det;
  std::map<const void *, std::vector<DualPoint>> dual_cache;

  const std::vector<Lattice> &lattices(const Int &det) {
    std::lock_guard<std::mutex> lk(mu);
    auto it = by_det.find(det);
    if (it == by_det.end()) it = by_det.emplace(det, enumerate_sublattices(dim, det)).first;
    return it->second;
  }
  const std::vector<DualPoint> &duals(const Lattice &l) {
    std::lock_guard<std::mutex> lk(mu);
    const void *key = &l.basis();
    auto it = dual_cache.find(key);
    if (it == dual_cache.end()) it = dual_cache.emplace(key, dual_group(l)).first;
    return it->second;
  }
};

struct Worker {
  const SearchConfig &cfg;
  LatticePool &pool;
  Clock::time_point deadline;
  bool has_deadline;
  bool aborted = false;
  SearchStats stats;
  std::vector<TilingInstance> found;

  // per-branch state
  std::vector<LatticeTranslate> placed;
  std::map<Int, int> remaining;
  Rat density;
  std::vector<Int> scan_extents;
  std::map<DualPoint, int> incidence; // nontrivial dual points of placed members
  std::map<std::pair<const void *, const void *>, Lattice> sum_cache;

  Worker(const SearchConfig &c, LatticePool &p, Clock::time_point dl, bool has_dl)
      : cfg(c), pool(p), deadline(dl), has_deadline(has_dl) {}

  const Lattice &sum_of(const Lattice &a, const Lattice &b) {
    auto key = std::make_pair(static_cast<const void *>(&a.basis()),
                              static_cast<const void *>(&b.basis()));
    auto it = sum_cache.find(key);
    if (it == sum_cache.end()) it = sum_cache.emplace(key, a.sum(b)).first;
    return it->second;
  }

  bool out_of_time() {
    if (!has_deadline) return false;
    if ((stats.nodes & 1023) == 0 && Clock::now() > deadline) aborted = true;
    return aborted;
  }

  void run_multiset(const std::vector<Int> &dets) {
    ++stats.multisets;
    Rat total(0);
    for (const Int &d : dets) {
      Rat q(Int(1), d);
      q.canonicalize();
      total += q;
    }
    if (cfg.prunes.density && total != 1) {
      ++stats.prune_counts["density"];
      return;
    }
    if (cfg.prunes.pair_gcd) {
      for (std::size_t i = 0; i < dets.size(); ++i)
        for (std::size_t j = i + 1; j < dets.size(); ++j)
          if (gcd(dets[i], dets[j]) == 1) {
            ++stats.prune_counts["pair_gcd"];
            return;
          }
    }
    if (cfg.prunes.prime_power) {
      for (std::size_t i = 0; i < dets.size(); ++i)
        for (const auto &[p, k] : factorize(dets[i])) {
          Int pk(1);
          for (int e = 0; e < k; ++e) pk *= p;
          bool paired = false;
          for (std::size_t j = 0; j < dets.size() && !paired; ++j)
            paired = j != i && is_zero(fmod(dets[j], pk));
          if (!paired) {
            ++stats.prune_counts["prime_power"];
            return;
          }
        }
    }
    placed.clear();
    incidence.clear();
    remaining.clear();
    for (const Int &d : dets) ++remaining[d];
    density = Rat(0);
    scan_extents.assign(static_cast<std::size_t>(cfg.dim), Int(1));
    for (const Int &d : dets)
      for (Int &e : scan_extents) e = lcm(e, d);
    Vec cursor(static_cast<std::size_t>(cfg.dim), Int(0));
    extend(cursor);
  }

  // Lexicographically first point at or after `p` not covered by the
  // placed cosets. Guaranteed to exist inside the scan extents while the
  // placed density is below 1.
  bool advance_to_uncovered(Vec &p) {
    for (;;) {
      bool covered = false;
      for (const LatticeTranslate &tr : placed)
        if (tr.contains_point(p)) {
          covered = true;
          break;
        }
      if (!covered) return true;
      int k = cfg.dim - 1;
      while (k >= 0) {
        ++p[static_cast<std::size_t>(k)];
        if (p[static_cast<std::size_t>(k)] < scan_extents[static_cast<std::size_t>(k)]) break;
        p[static_cast<std::size_t>(k)] = 0;
        --k;
      }
      if (k < 0) return false; //全 period box covered
    }
  }

  void record_found() {
    std::vector<LatticeTranslate> members = placed;
    std::sort(members.begin(), members.end());
    TilingInstance inst(cfg.dim, std::move(members));
    // contract: every reported instance re-verifies under both methods
    if (!is_tiling_box_oracle(inst).is_tiling || !verify_character_formula(inst).is_tiling)
      throw std::logic_error("search produced a non-tiling; this is a bug");
    if (cfg.translation_free_only && !translation_pairs(inst).empty())
      throw std::logic_error("search produced a translated tiling in translation-free mode");
    found.push_back(std::move(inst));
  }

  void extend(Vec cursor) {
    ++stats.nodes;
    if (out_of_time()) return;
    if (remaining.empty()) {
      if (density == 1) record_found();
      return;
    }
    if (cfg.prunes.multiplicity_prime_power_2d && cfg.dim == 2 && cfg.translation_free_only &&
        !placed.empty()) {
      // If the leading member under the (det/e, det) order is already fixed
      // and its multiplicity is a prime power, every completion has the
      // translation property.
      std::size_t lead = 0;
      Rat lead_key(-1);
      Int lead_det(0);
      for (std::size_t i = 0; i < placed.size(); ++i) {
        const Lattice &l = placed[i].lattice();
        Rat key(l.determinant(), l.multiplicity());
        key.canonicalize();
        if (key > lead_key || (key == lead_key && l.determinant() > lead_det)) {
          lead_key = key;
          lead_det = l.determinant();
          lead = i;
        }
      }
      Int e = placed[lead].lattice().multiplicity();
      if (is_prime_power(e)) {
        Rat quot(lead_det, e);
        quot.canonicalize();
        bool stable = true;
        for (const auto &[d, cnt] : remaining)
          if (Rat(d) > quot) stable = false;
        if (stable) {
          ++stats.prune_counts["multiplicity_prime_power_2d"];
          return;
        }
      }
    }
    if (cfg.prunes.comeinpairs) {
      // A nontrivial dual point seen exactly once must still be coverable:
      // some remaining determinant has to be divisible by its order.
      for (const auto &[z, count] : incidence) {
        if (count != 1) continue;
        Int ord = z.order();
        bool coverable = false;
        for (const auto &[d, cnt] : remaining)
          if (is_zero(fmod(d, ord))) {
            coverable = true;
            break;
          }
        if (!coverable) {
          ++stats.prune_counts["comeinpairs"];
          return;
        }
      }
    }
    if (!advance_to_uncovered(cursor))
      throw std::logic_error("uncovered point missing below density 1");

    std::vector<Int> dets;
    for (const auto &[d, cnt] : remaining) dets.push_back(d);
    for (const Int &d : dets) {
      for (const Lattice &cand : pool.lattices(d)) {
        bool skip = false;
        if (cfg.translation_free_only)
          for (const LatticeTranslate &tr : placed)
            if (tr.lattice() == cand) {
              skip = true;
              break;
            }
        if (skip) continue;
        LatticeTranslate coset(cand, cursor);
        bool disjoint = true;
        for (const LatticeTranslate &tr : placed) {
          Vec diff(coset.offset().size());
          for (std::size_t i = 0; i < diff.size(); ++i)
            diff[i] = coset.offset()[i] - tr.offset()[i];
          if (sum_of(tr.lattice(), cand).member(diff)) {
            disjoint = false;
            break;
          }
        }
        if (!disjoint) continue;
        // place
        placed.push_back(coset);
        auto rem_it = remaining.find(d);
        if (--rem_it->second == 0) remaining.erase(rem_it);
        Rat q(Int(1), d);
        q.canonicalize();
        density += q;
        const std::vector<DualPoint> &duals = pool.duals(cand);
        for (const DualPoint &z : duals)
          if (!z.is_identity()) ++incidence[z];

        extend(cursor);

        // undo
        for (const DualPoint &z : duals)
          if (!z.is_identity())
            if (--incidence[z] == 0) incidence.erase(z);
        density -= q;
        ++remaining[d];
        placed.pop_back();
        if (aborted) return;
      }
    }
  }
};

// Nondecreasing determinant multisets with parts in [2, bound] and density
// sum at most 1 (pairwise-disjoint cosets can never exceed density 1, so
// this cap is structural, not a theorem-based prune).
std::vector<std::vector<Int>> determinant_multisets(const SearchConfig &cfg) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur;
  auto rec = [&](auto &&self, const Int &min_part, const Rat &remaining_density) -> void {
    if (cur.size() >= 2) out.push_back(cur);
    if (cfg.max_translates && static_cast<int>(cur.size()) >= *cfg.max_translates) return;
    for (Int d = min_part; d <= cfg.det_bound; ++d) {
      Rat q(Int(1), d);
      q.canonicalize();
      if (q > remaining_density) continue;
      cur.push_back(d);
      self(self, d, remaining_density - q);
      cur.pop_back();
    }
  };
  rec(rec, Int(2), Rat(1));
  return out;
}

} // namespace

SearchOutcome search_translation_free(const SearchConfig &cfg) {
  if (cfg.dim < 1 || cfg.dim > 3)
    throw std::invalid_argument("search supports dimensions 1..3");
  if (cfg.det_bound < 2) throw std::invalid_argument("determinant bound must be at least 2");

  LatticePool pool;
  pool.dim = cfg.dim;
  std::vector<std::vector<Int>> multisets = determinant_multisets(cfg);

  bool has_deadline = cfg.time_budget_seconds > 0;
  Clock::time_point deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(cfg.time_budget_seconds));

  SearchOutcome outcome;
  int jobs = std::max(1, cfg.parallelism);
  std::atomic<std::size_t> next{0};
  std::mutex merge_mu;
  bool aborted = false;

  auto drain = [&]() {
    Worker w(cfg, pool, deadline, has_deadline);
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= multisets.size()) break;
      w.run_multiset(multisets[i]);
      if (w.aborted) break;
    }
    std::lock_guard<std::mutex> lk(merge_mu);
    outcome.stats.merge(w.stats);
    for (TilingInstance &inst : w.found) outcome.found.push_back(std::move(inst));
    if (w.aborted) aborted = true;
  };

  if (jobs == 1) {
    drain();
  } else {
    std::vector<std::thread> pool_threads;
    for (int i = 0; i < jobs; ++i) pool_threads.emplace_back(drain);
    for (std::thread &th : pool_threads) th.join();
  }

  outcome.exhausted = !aborted && next.load() >= multisets.size();
  std::sort(outcome.found.begin(), outcome.found.end(),
            [](const TilingInstance &a, const TilingInstance &b) {
              if (a.size() != b.size()) return a.size() < b.size();
              for (int i = 0; i < a.size(); ++i) {
                if (a[i] != b[i]) return a[i] < b[i];
              }
              return false;
            });
  return outcome;
}

std::string incidence_invariant(const TilingInstance &t) {
  const int n = t.size();
  if (n > 8) throw budget_error("incidence invariant limited to 8 members");
  std::vector<std::vector<DualPoint>> groups;
  std::set<DualPoint> all;
  for (int j = 0; j < n; ++j) {
    groups.push_back(dual_group(t[j].lattice()));
    for (const DualPoint &z : groups.back())
      if (!z.is_identity()) all.insert(z);
  }
  std::vector<std::string> member_label(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::ostringstream os;
    os << to_string(t[j].lattice().determinant()) << ":";
    for (const Int &f : t[j].lattice().invariant_factors()) os << to_string(f) << ",";
    member_label[static_cast<std::size_t>(j)] = os.str();
  }
  // membership masks in the instance's own member order
  std::vector<std::pair<Int, std::vector<bool>>> points;
  for (const DualPoint &z : all) {
    std::vector<bool> mask(static_cast<std::size_t>(n), false);
    for (int j = 0; j < n; ++j)
      mask[static_cast<std::size_t>(j)] =
          std::binary_search(groups[static_cast<std::size_t>(j)].begin(),
                             groups[static_cast<std::size_t>(j)].end(), z);
    points.emplace_back(z.order(), std::move(mask));
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) perm[static_cast<std::size_t>(j)] = j;
  std::string best;
  do {
    std::ostringstream os;
    os << "n=" << n << ";members=";
    for (int j : perm) os << member_label[static_cast<std::size_t>(j)] << "|";
    std::vector<std::string> rows;
    for (const auto &[ord, mask] : points) {
      std::string row = to_string(ord) + ":";
      for (int j : perm) row += mask[static_cast<std::size_t>(j)] ? '1' : '0';
      rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    os << "points=";
    for (const std::string &r : rows) os << r << "|";
    std::string s = os.str();
    if (best.empty() || s < best) best = std::move(s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<std::vector<int>> classify_up_to_structure(
    const std::vector<TilingInstance> &instances) {
  std::map<std::string, std::vector<int>> classes;
  for (std::size_t i = 0; i < instances.size(); ++i)
    classes[incidence_invariant(instances[i])].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> out;
  for (auto &[key, idx] : classes) out.push_back(std::move(idx));
  return out;
}

} // namespace latil
