#pragma once

#include <vector>

#include "latil/lattice.hpp"
#include "latil/numeric.hpp"

namespace latil {

/// Visits every point of the coset v + L lying in the half-open box
/// prod_k [0, extents[k]). The lower-triangular basis lets each coordinate
/// fix an exact integer range for its basis coefficient, so the walk is
/// linear in the number of emitted points.
template <typename F>
void for_each_coset_point_in_box(const LatticeTranslate &t, const std::vector<Int> &extents,
                                 F &&visit) {
  const IntMatrix &h = t.lattice().basis();
  const int d = h.rows();
  Vec acc = t.offset();
  auto rec = [&](auto &&self, int i) -> void {
    if (i == d) {
      visit(static_cast<const Vec &>(acc));
      return;
    }
    const Int &step = h(i, i);
    Int lo = cdiv(-acc[i], step);
    Int hi = fdiv(extents[i] - 1 - acc[i], step);
    if (lo > hi) return;
    for (int r = i; r < d; ++r) acc[r] += lo * h(r, i);
    for (Int k = lo;; ++k) {
      self(self, i + 1);
      if (k == hi) break;
      for (int r = i; r < d; ++r) acc[r] += h(r, i);
    }
    for (int r = i; r < d; ++r) acc[r] -= hi * h(r, i);
  };
  rec(rec, 0);
}

} // namespace latil
