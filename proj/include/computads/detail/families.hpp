#pragma once

#include <algorithm>
#include <vector>

#include "computads/presheaf.hpp"

namespace cptd::detail {

// Enumerates families v: cells(shape) -> V that are compatible with faces,
// i.e. restrict(d, v(b)) == v(d^*b). Cells are visited in decreasing
// dimension; once a cell is chosen all of its faces are forced, and a forced
// value must have depth <= forced_bound. `candidates(s)` lists the free choices
// for a cell of sort s.
template <class V, class Restrict, class Depth, class Candidates, class Visit>
void search_families(const Presheaf& shape, int forced_bound, Restrict&& restrict, Depth&& depth,
                     Candidates&& candidates, Visit&& visit) {
  const auto& cat = shape.base();
  const int n = shape.total_cells();
  std::vector<int> order(n);
  for (int k = 0; k < n; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return cat.dim(shape.unflat(a).sort) > cat.dim(shape.unflat(b).sort);
  });
  std::vector<V> values(n);
  std::vector<int> trail;
  bool stop = false;

  auto assign = [&](int cell, const V& v) -> bool {
    values[cell] = v;
    trail.push_back(cell);
    CellRef r = shape.unflat(cell);
    for (ArrowId d : cat.into(r.sort)) {
      const int low = shape.flat(cat.arrow(d).src, shape.act(d, r.index));
      V w = restrict(d, v);
      if (values[low].valid()) {
        if (!(values[low] == w)) return false;
        continue;
      }
      if (depth(w) > forced_bound) return false;
      values[low] = std::move(w);
      trail.push_back(low);
    }
    return true;
  };
  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      values[trail.back()] = V();
      trail.pop_back();
    }
  };

  auto rec = [&](auto&& self, int k) -> void {
    if (stop) return;
    if (k == n) {
      if (!visit(values)) stop = true;
      return;
    }
    const int cell = order[k];
    if (values[cell].valid()) {
      self(self, k + 1);
      return;
    }
    const auto& cands = candidates(shape.unflat(cell).sort);
    for (const V& c : cands) {
      const std::size_t mark = trail.size();
      if (assign(cell, c)) self(self, k + 1);
      undo(mark);
      if (stop) return;
    }
  };
  rec(rec, 0);
}

}  // namespace cptd::detail
