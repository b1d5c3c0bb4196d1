#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latil/characters.hpp"
#include "latil/lattice.hpp"
#include "latil/numeric.hpp"

namespace latil {

/// Ordered family of lattice translates in a common dimension. Structurally
/// duplicate translates are rejected at construction.
class TilingInstance {
public:
  TilingInstance(int dim, std::vector<LatticeTranslate> translates);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(translates_.size()); }
  const std::vector<LatticeTranslate> &translates() const { return translates_; }
  const LatticeTranslate &operator[](int i) const { return translates_[static_cast<std::size_t>(i)]; }

private:
  int dim_;
  std::vector<LatticeTranslate> translates_;
};

enum class VerifyMethod { box_oracle, character_formula, disjoint_density };

struct Witness {
  enum class Kind { uncovered_point, doubly_covered_point, character_failure };
  Kind kind;
  Vec point;                      // for the point kinds
  std::optional<DualPoint> dual;  // for character failures
  std::optional<CycloSum> value;  // the nonzero character sum
  std::string str() const;
};

enum class CheckResult { pass, fail, not_applicable };

struct VerificationReport {
  bool is_tiling = false;
  VerifyMethod method = VerifyMethod::box_oracle;
  std::vector<Witness> witnesses;
  std::map<std::string, CheckResult> theorem_checks;
};

inline constexpr long kDefaultBoxVolumeCap = 10'000'000;

/// True iff the two cosets have empty intersection: they meet exactly when
/// the offset difference lies in the sum of the two lattices.
bool cosets_disjoint(const LatticeTranslate &a, const LatticeTranslate &b);

/// Exact sum of 1/det over the members.
Rat density_sum(const TilingInstance &t);

/// Per-coordinate period of the union's indicator: the lcm of the member
/// polar values in each coordinate.
std::vector<Int> period_extents(const TilingInstance &t);

/// Exhaustive check over one period box: every point covered exactly once.
/// Throws box_limit_error when the box volume exceeds the cap.
VerificationReport is_tiling_box_oracle(const TilingInstance &t,
                                        long box_volume_cap = kDefaultBoxVolumeCap);

/// Equivalent verdict without enumeration: pairwise disjointness plus
/// density exactly 1. Witnesses: an explicit common point of a meeting
/// pair, or the first uncovered point.
VerificationReport is_tiling_fast(const TilingInstance &t);

/// Weighted character sum over the members whose dual group contains z:
/// sum of chi_z(v_j)/det(L_j). Empty sums are allowed and equal zero.
CycloSum character_sum(const TilingInstance &t, const DualPoint &z);

/// Full residue-condition check: the weighted character sum must be 1 at
/// the identity and 0 at every other point of the union of the member dual
/// groups. Necessary and sufficient for a tiling.
VerificationReport verify_character_formula(const TilingInstance &t);

/// All index pairs (i, j), i < j, whose members share the same underlying
/// lattice (0-based indices).
std::vector<std::pair<int, int>> translation_pairs(const TilingInstance &t);

/// Structural theorem battery evaluated on a tiling. When assume_tiling is
/// false the instance is first verified and a non-tiling yields a map of
/// not_applicable entries. Key -> result; dimension-restricted checks
/// report not_applicable outside their dimension.
std::map<std::string, CheckResult> check_theorems(const TilingInstance &t, bool assume_tiling);

/// Whether several members share the maximal determinant while disagreeing
/// on cyclicity (the reading of the max-determinant criterion is ambiguous
/// in that case and gets surfaced by the CLI).
bool max_det_cyclicity_ambiguous(const TilingInstance &t);

struct SplitResult {
  std::vector<int> subset; // 0-based member indices, ascending
  LatticeTranslate coarse; // the coset the subset unions to
};

/// Searches proper subsets (size ascending, then lexicographic) whose union
/// is a single coarser lattice translate. Returns the first hit, nullopt if
/// primitive within the budget; throws budget_error past `subset_budget`
/// examined subsets.
std::optional<SplitResult> find_split(const TilingInstance &t, int max_subset_size,
                                      long long subset_budget = 1'000'000);

/// Replaces member `index` by a refinement that must tile exactly that
/// coset (verified through the box oracle in local coordinates).
TilingInstance split_translate(const TilingInstance &t, int index,
                               const std::vector<LatticeTranslate> &refinement);

} // namespace latil
