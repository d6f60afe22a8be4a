#include "computads/presheaf.hpp"

#include <algorithm>
#include <numeric>

#include "computads/error.hpp"

namespace cptd {

Presheaf Presheaf::from_tables(CategoryPtr base, std::vector<std::vector<std::string>> cells,
                               std::vector<std::vector<int>> action) {
  const auto& cat = *base;
  if (static_cast<int>(cells.size()) > cat.num_sorts())
    fail(ErrorKind::UnknownSort, "more cell sorts than the base has sorts");
  cells.resize(cat.num_sorts());
  action.resize(cat.num_arrows());

  std::vector<std::vector<int>> new_pos(cells.size());
  for (std::size_t s = 0; s < cells.size(); ++s) {
    std::vector<int> order(cells[s].size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return cells[s][a] < cells[s][b]; });
    new_pos[s].assign(order.size(), 0);
    std::vector<std::string> sorted;
    for (std::size_t k = 0; k < order.size(); ++k) {
      new_pos[s][order[k]] = static_cast<int>(k);
      sorted.push_back(cells[s][order[k]]);
    }
    cells[s] = std::move(sorted);
  }

  Presheaf p;
  p.base_ = std::move(base);
  p.cells_ = std::move(cells);
  p.action_.assign(cat.num_arrows(), {});
  for (ArrowId a = 0; a < cat.num_arrows(); ++a) {
    const Arrow& ar = cat.arrow(a);
    const auto n_dst = p.cells_[ar.dst].size();
    if (ar.identity) {
      p.action_[a].resize(n_dst);
      std::iota(p.action_[a].begin(), p.action_[a].end(), 0);
      continue;
    }
    if (action[a].size() != n_dst)
      fail(ErrorKind::MissingAction, "action of face " + ar.id + " is not given on every cell");
    p.action_[a].assign(n_dst, -1);
    for (std::size_t old = 0; old < n_dst; ++old) {
      int to = action[a][old];
      if (to < 0 || to >= static_cast<int>(p.cells_[ar.src].size()))
        fail(ErrorKind::MissingAction, "action of face " + ar.id + " is undefined on a cell");
      p.action_[a][new_pos[ar.dst][old]] = new_pos[ar.src][to];
    }
  }
  p.finish();

  for (ArrowId a = 0; a < cat.num_arrows(); ++a) {
    const Arrow& outer = cat.arrow(a);
    if (outer.identity) continue;
    for (ArrowId b : cat.into(outer.src)) {
      ArrowId ab = cat.compose(a, b);
      for (int x = 0; x < p.num_cells(outer.dst); ++x) {
        if (p.act(ab, x) != p.act(b, p.act(a, x)))
          fail(ErrorKind::FunctorialityFailure, "restricting " + p.cell_name(outer.dst, x) + " along " +
                                                    cat.arrow(ab).id + " differs from restricting along " +
                                                    outer.id + " then " + cat.arrow(b).id);
      }
    }
  }
  return p;
}

Presheaf Presheaf::create(CategoryPtr base, const std::vector<std::pair<std::string, std::vector<std::string>>>& cells,
                          const std::vector<ActionDecl>& action) {
  const auto& cat = *base;
  std::vector<std::vector<std::string>> by_sort(cat.num_sorts());
  std::unordered_map<std::string, CellRef> where;
  for (const auto& [sort, names] : cells) {
    SortId s = cat.sort_index(sort);
    for (const auto& n : names) {
      if (!where.emplace(n, CellRef{s, static_cast<int>(by_sort[s].size())}).second)
        fail(ErrorKind::UnknownCell, "duplicate cell " + n);
      by_sort[s].push_back(n);
    }
  }
  std::vector<std::vector<int>> table(cat.num_arrows());
  for (ArrowId a = 0; a < cat.num_arrows(); ++a) table[a].assign(by_sort[cat.arrow(a).dst].size(), -1);
  for (const auto& d : action) {
    ArrowId a = cat.arrow_index(d.face);
    const Arrow& ar = cat.arrow(a);
    auto from = where.find(d.from);
    auto to = where.find(d.to);
    if (from == where.end()) fail(ErrorKind::UnknownCell, "unknown cell " + d.from);
    if (to == where.end()) fail(ErrorKind::UnknownCell, "unknown cell " + d.to);
    if (ar.identity) {
      if (from->second != to->second) fail(ErrorKind::FunctorialityFailure, "identity face moves " + d.from);
      continue;
    }
    if (from->second.sort != ar.dst || to->second.sort != ar.src)
      fail(ErrorKind::SortMismatch, "action entry " + d.face + ": " + d.from + " -> " + d.to + " is ill-sorted");
    int& slot = table[a][from->second.index];
    if (slot != -1 && slot != to->second.index)
      fail(ErrorKind::FunctorialityFailure, "conflicting action entries for " + d.face + " on " + d.from);
    slot = to->second.index;
  }
  // Derive composite faces from generating ones.
  std::vector<ArrowId> order;
  for (ArrowId a = 0; a < cat.num_arrows(); ++a)
    if (!cat.arrow(a).identity) order.push_back(a);
  std::stable_sort(order.begin(), order.end(),
                   [&](ArrowId x, ArrowId y) { return cat.dim(cat.arrow(x).src) > cat.dim(cat.arrow(y).src); });
  for (ArrowId e : order) {
    const Arrow& ea = cat.arrow(e);
    for (int x = 0; x < static_cast<int>(table[e].size()); ++x) {
      if (table[e][x] != -1) continue;
      for (ArrowId d : cat.into(ea.dst)) {
        if (table[e][x] != -1) break;
        if (table[d][x] == -1) continue;
        for (ArrowId d2 : cat.hom(ea.src, cat.arrow(d).src)) {
          if (cat.arrow(d2).identity || cat.compose(d, d2) != e) continue;
          int y = table[d2][table[d][x]];
          if (y != -1) {
            table[e][x] = y;
            break;
          }
        }
      }
      if (table[e][x] == -1)
        fail(ErrorKind::MissingAction, "no action of face " + ea.id + " on cell " + by_sort[ea.dst][x]);
    }
  }
  return from_tables(std::move(base), std::move(by_sort), std::move(table));
}

void Presheaf::finish() {
  offsets_.assign(cells_.size() + 1, 0);
  index_.clear();
  for (std::size_t s = 0; s < cells_.size(); ++s) {
    offsets_[s + 1] = offsets_[s] + static_cast<int>(cells_[s].size());
    for (std::size_t c = 0; c < cells_[s].size(); ++c) {
      if (!index_.emplace(cells_[s][c], CellRef{static_cast<SortId>(s), static_cast<int>(c)}).second)
        fail(ErrorKind::UnknownCell, "duplicate cell " + cells_[s][c]);
    }
  }
}

std::optional<CellRef> Presheaf::find_cell(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

CellRef Presheaf::cell(const std::string& name) const {
  auto r = find_cell(name);
  if (!r) fail(ErrorKind::UnknownCell, "unknown cell " + name);
  return *r;
}

int Presheaf::max_cell_dim() const {
  int d = -1;
  for (std::size_t s = 0; s < cells_.size(); ++s)
    if (!cells_[s].empty()) d = std::max(d, base_->dim(static_cast<SortId>(s)));
  return d;
}

int Presheaf::act(ArrowId a, int c) const { return action_.at(a).at(c); }

CellRef Presheaf::unflat(int f) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), f);
  SortId s = static_cast<SortId>(it - offsets_.begin()) - 1;
  return {s, f - offsets_[s]};
}

Presheaf Presheaf::truncate(int n) const { return rebase(base_->truncate(n)); }

Presheaf Presheaf::skeleton(CategoryPtr base) const {
  if (!base_->is_truncation_of(*base))
    fail(ErrorKind::BaseMismatch, "skeleton target does not extend the presheaf's base");
  return rebase(std::move(base));
}

Presheaf Presheaf::rebase(CategoryPtr base) const {
  if (!base_->is_truncation_of(*base) && !base->is_truncation_of(*base_))
    fail(ErrorKind::BaseMismatch, "bases are not truncations of one another");
  Presheaf p;
  p.cells_ = cells_;
  p.cells_.resize(base->num_sorts());
  p.action_.assign(base->num_arrows(), {});
  for (ArrowId a = 0; a < base->num_arrows(); ++a) {
    if (a < static_cast<int>(action_.size())) {
      p.action_[a] = action_[a];
    } else {
      p.action_[a].resize(p.cells_[base->arrow(a).dst].size());
      std::iota(p.action_[a].begin(), p.action_[a].end(), 0);
    }
  }
  p.base_ = std::move(base);
  p.finish();
  return p;
}

bool operator==(const Presheaf& a, const Presheaf& b) {
  if (!a.base_ || !b.base_) return a.base_ == b.base_;
  return a.base_->equals(*b.base_) && a.cells_ == b.cells_ && a.action_ == b.action_;
}

bool bases_compatible(const DirectCategory& a, const DirectCategory& b) {
  return a.is_truncation_of(b) || b.is_truncation_of(a);
}

std::vector<int> PresheafMorphism::flatten() const {
  std::vector<int> out;
  for (const auto& c : components) out.insert(out.end(), c.begin(), c.end());
  return out;
}

bool is_natural(const Presheaf& x, const Presheaf& y, const PresheafMorphism& m) {
  const auto& cat = x.base();
  if (static_cast<int>(m.components.size()) < cat.num_sorts()) return false;
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    if (static_cast<int>(m.components[s].size()) != x.num_cells(s)) return false;
    for (int c : m.components[s])
      if (c < 0 || c >= y.num_cells(s)) return false;
  }
  for (SortId s = 0; s < cat.num_sorts(); ++s)
    for (ArrowId a : cat.into(s))
      for (int c = 0; c < x.num_cells(s); ++c)
        if (m(cat.arrow(a).src, x.act(a, c)) != y.act(a, m(s, c))) return false;
  return true;
}

PresheafMorphism identity_morphism(const Presheaf& x) {
  PresheafMorphism m;
  m.components.resize(x.base().num_sorts());
  for (SortId s = 0; s < x.base().num_sorts(); ++s) {
    m.components[s].resize(x.num_cells(s));
    std::iota(m.components[s].begin(), m.components[s].end(), 0);
  }
  return m;
}

PresheafMorphism compose(const PresheafMorphism& g, const PresheafMorphism& f) {
  PresheafMorphism m = f;
  for (std::size_t s = 0; s < m.components.size(); ++s)
    for (auto& c : m.components[s]) c = g.components.at(s).at(c);
  return m;
}

void for_each_hom(const Presheaf& x, const Presheaf& y, const std::function<bool(const PresheafMorphism&)>& visit) {
  if (!bases_compatible(x.base(), y.base())) fail(ErrorKind::BaseMismatch, "presheaves live over different bases");
  const auto& cat = x.base();
  const int ns = cat.num_sorts();
  for (SortId s = y.base().num_sorts(); s < ns; ++s)
    if (x.num_cells(s) > 0) return;
  PresheafMorphism m;
  m.components.resize(ns);
  for (SortId s = 0; s < ns; ++s) m.components[s].assign(x.num_cells(s), -1);
  std::vector<CellRef> order;
  for (SortId s = 0; s < ns; ++s)
    for (int c = 0; c < x.num_cells(s); ++c) order.push_back({s, c});

  bool stop = false;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (stop) return;
    if (k == order.size()) {
      if (!visit(m)) stop = true;
      return;
    }
    auto [s, c] = order[k];
    for (int t = 0; t < y.num_cells(s) && !stop; ++t) {
      bool ok = true;
      for (ArrowId a : cat.into(s)) {
        if (m(cat.arrow(a).src, x.act(a, c)) != y.act(a, t)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      m.components[s][c] = t;
      go(k + 1);
    }
    m.components[s][c] = -1;
  };
  go(0);
}

std::vector<PresheafMorphism> enumerate_hom(const Presheaf& x, const Presheaf& y) {
  std::vector<PresheafMorphism> out;
  for_each_hom(x, y, [&](const PresheafMorphism& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

namespace {

Presheaf representable_impl(CategoryPtr base, SortId top, bool with_top) {
  const auto& cat = *base;
  std::vector<std::vector<std::string>> cells(cat.num_sorts());
  std::vector<std::vector<ArrowId>> arrow_of(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    for (ArrowId a : cat.hom(s, top)) {
      if (cat.arrow(a).identity && !with_top) continue;
      cells[s].push_back(cat.arrow(a).identity ? kTopCell : cat.arrow(a).id);
      arrow_of[s].push_back(a);
    }
  }
  std::vector<std::vector<int>> action(cat.num_arrows());
  for (ArrowId d = 0; d < cat.num_arrows(); ++d) {
    const Arrow& da = cat.arrow(d);
    for (ArrowId x : arrow_of[da.dst]) {
      ArrowId r = cat.compose(x, d);
      auto it = std::find(arrow_of[da.src].begin(), arrow_of[da.src].end(), r);
      action[d].push_back(static_cast<int>(it - arrow_of[da.src].begin()));
    }
  }
  return Presheaf::from_tables(std::move(base), std::move(cells), std::move(action));
}

}  // namespace

Presheaf representable(CategoryPtr base, SortId s) { return representable_impl(std::move(base), s, true); }

Presheaf boundary_representable(CategoryPtr base, SortId s) { return representable_impl(std::move(base), s, false); }

Presheaf discrete(CategoryPtr base, const std::vector<std::pair<std::string, std::string>>& cells_with_sorts) {
  std::vector<std::vector<std::string>> cells(base->num_sorts());
  for (const auto& [name, sort] : cells_with_sorts) cells[base->sort_index(sort)].push_back(name);
  std::vector<std::vector<int>> action(base->num_arrows());
  for (ArrowId a = 0; a < base->num_arrows(); ++a)
    if (!base->arrow(a).identity && !cells[base->arrow(a).dst].empty())
      fail(ErrorKind::MissingAction, "discrete cells given in a sort with faces");
  return Presheaf::from_tables(std::move(base), std::move(cells), std::move(action));
}

Presheaf empty_presheaf(CategoryPtr base) {
  std::vector<std::vector<std::string>> cells(base->num_sorts());
  return Presheaf::from_tables(std::move(base), std::move(cells), {});
}

Presheaf sub_presheaf(const Presheaf& x, const std::vector<bool>& keep) {
  const auto& cat = x.base();
  std::vector<std::vector<std::string>> cells(cat.num_sorts());
  std::vector<std::vector<int>> new_index(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    new_index[s].assign(x.num_cells(s), -1);
    for (int c = 0; c < x.num_cells(s); ++c) {
      if (!keep.at(x.flat(s, c))) continue;
      new_index[s][c] = static_cast<int>(cells[s].size());
      cells[s].push_back(x.cell_name(s, c));
    }
  }
  std::vector<std::vector<int>> action(cat.num_arrows());
  for (ArrowId a = 0; a < cat.num_arrows(); ++a) {
    const Arrow& ar = cat.arrow(a);
    for (int c = 0; c < x.num_cells(ar.dst); ++c) {
      if (new_index[ar.dst][c] < 0) continue;
      int to = new_index[ar.src][x.act(a, c)];
      if (to < 0) fail(ErrorKind::FunctorialityFailure, "sub-presheaf is not closed under faces");
      action[a].push_back(to);
    }
  }
  return Presheaf::from_tables(x.base_ptr(), std::move(cells), std::move(action));
}

}  // namespace cptd
