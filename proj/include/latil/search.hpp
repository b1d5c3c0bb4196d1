#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latil/tiling.hpp"

namespace latil {

struct SearchConfig {
  int dim = 2;
  Int det_bound = 12;
  /// Upper bound on the number of translates; unbounded when absent (the
  /// density constraint bounds it by det_bound anyway).
  std::optional<int> max_translates;
  /// When false the search reports every tiling, not only translation-free
  /// ones; used by the completeness audit.
  bool translation_free_only = true;
  struct Prunes {
    bool density = false;
    bool pair_gcd = false;
    bool prime_power = false;
    bool multiplicity_prime_power_2d = false;
    bool comeinpairs = false;
  } prunes;
  double time_budget_seconds = 0; // 0 = unlimited
  int parallelism = 1;
};

struct SearchStats {
  long long multisets = 0;
  long long nodes = 0;
  std::map<std::string, long long> prune_counts;
  void merge(const SearchStats &other);
};

struct SearchOutcome {
  bool exhausted = false;
  std::vector<TilingInstance> found; // canonically sorted; each re-verified
  SearchStats stats;
};

/// Complete, duplicate-free list of the index-`det` sublattices of Z^dim,
/// enumerated through their canonical Hermite bases.
std::vector<Lattice> enumerate_sublattices(int dim, const Int &det);

/// Backtracking search for tilings with all member determinants <= the
/// bound (and at least two members). Determinant multisets are enumerated
/// first, then cosets are placed by an exact-cover walk branching on the
/// first uncovered point. Every reported instance is re-verified by both
/// the box oracle and the character formula.
SearchOutcome search_translation_free(const SearchConfig &cfg);

/// Canonical string capturing which dual points lie in which member dual
/// groups (orders, member determinants and invariant factors included),
/// minimized over member relabelings: a computable invariant of
/// automorphism orbits. Members are capped at 8.
std::string incidence_invariant(const TilingInstance &t);

/// Partition of the instances by their incidence invariant; classes sorted
/// by invariant, indices ascending inside each class.
std::vector<std::vector<int>> classify_up_to_structure(const std::vector<TilingInstance> &instances);

} // namespace latil
