#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "computads/category.hpp"

namespace cptd {

// `face` goes j -> i; `from` is a cell of sort i and `to` its restriction of sort j.
struct ActionDecl {
  std::string face;
  std::string from;
  std::string to;
};

struct CellRef {
  SortId sort = 0;
  int index = 0;
  friend bool operator==(const CellRef&, const CellRef&) = default;
  friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

// Finite presheaf on a direct category. Cells are ordered lexicographically
// within each sort and names are unique across sorts.
class Presheaf {
 public:
  Presheaf() = default;

  // Actions may be given on a generating set of faces; the rest are derived
  // through the composition table and then checked for functoriality.
  static Presheaf create(CategoryPtr base, const std::vector<std::pair<std::string, std::vector<std::string>>>& cells,
                         const std::vector<ActionDecl>& action);
  // Index-level constructor. `action[a]` maps cells of dst(a) to cells of
  // src(a) for every non-identity arrow a; entries of identity arrows are ignored.
  static Presheaf from_tables(CategoryPtr base, std::vector<std::vector<std::string>> cells,
                              std::vector<std::vector<int>> action);

  const CategoryPtr& base_ptr() const { return base_; }
  const DirectCategory& base() const { return *base_; }

  int num_cells(SortId s) const { return s < static_cast<int>(cells_.size()) ? static_cast<int>(cells_[s].size()) : 0; }
  int total_cells() const { return offsets_.empty() ? 0 : offsets_.back(); }
  const std::string& cell_name(SortId s, int c) const { return cells_.at(s).at(c); }
  const std::vector<std::string>& cells(SortId s) const { return cells_.at(s); }
  std::optional<CellRef> find_cell(const std::string& name) const;
  CellRef cell(const std::string& name) const;
  int max_cell_dim() const;

  // Restriction of cell c (of sort dst(a)) along a: j -> i.
  int act(ArrowId a, int c) const;

  int flat(SortId s, int c) const { return offsets_.at(s) + c; }
  int flat(CellRef r) const { return flat(r.sort, r.index); }
  CellRef unflat(int f) const;

  Presheaf truncate(int n) const;
  // Re-extend to `base` (which must have this presheaf's base as a truncation) with no cells above.
  Presheaf skeleton(CategoryPtr base) const;
  // View the same cells over a base of which this base is a truncation, or vice versa.
  Presheaf rebase(CategoryPtr base) const;

  friend bool operator==(const Presheaf& a, const Presheaf& b);

 private:
  void finish();

  CategoryPtr base_;
  std::vector<std::vector<std::string>> cells_;
  std::vector<std::vector<int>> action_;  // per arrow
  std::vector<int> offsets_;
  std::unordered_map<std::string, CellRef> index_;
};

bool bases_compatible(const DirectCategory& a, const DirectCategory& b);

struct PresheafMorphism {
  std::vector<std::vector<int>> components;

  int operator()(SortId s, int c) const { return components.at(s).at(c); }
  int operator()(CellRef r) const { return components.at(r.sort).at(r.index); }
  std::vector<int> flatten() const;
  friend bool operator==(const PresheafMorphism&, const PresheafMorphism&) = default;
  friend auto operator<=>(const PresheafMorphism&, const PresheafMorphism&) = default;
};

bool is_natural(const Presheaf& x, const Presheaf& y, const PresheafMorphism& m);
PresheafMorphism identity_morphism(const Presheaf& x);
PresheafMorphism compose(const PresheafMorphism& g, const PresheafMorphism& f);

// Visits every morphism x -> y in canonical (lexicographic) order; stop by returning false.
void for_each_hom(const Presheaf& x, const Presheaf& y, const std::function<bool(const PresheafMorphism&)>& visit);
std::vector<PresheafMorphism> enumerate_hom(const Presheaf& x, const Presheaf& y);

Presheaf representable(CategoryPtr base, SortId s);
Presheaf boundary_representable(CategoryPtr base, SortId s);
// Name of the identity cell in a representable.
inline const std::string kTopCell = "id";

// Discrete presheaf: the given cells with no faces between them (all faces must
// land in empty sorts, so this is only valid for cells of sorts with no faces).
Presheaf discrete(CategoryPtr base, const std::vector<std::pair<std::string, std::string>>& cells_with_sorts);
Presheaf empty_presheaf(CategoryPtr base);

// Sub-presheaf on the cells kept by `keep` (flat indices), which must be closed under faces.
Presheaf sub_presheaf(const Presheaf& x, const std::vector<bool>& keep);

}  // namespace cptd
