#include "computads/category.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "computads/error.hpp"

namespace cptd {

namespace {

std::string identity_name(const std::string& sort) { return "1_" + sort; }

}  // namespace

CategoryPtr DirectCategory::create(std::vector<SortDecl> sorts, std::vector<FaceDecl> faces,
                                   std::vector<ComposeDecl> compose) {
  std::shared_ptr<DirectCategory> cat(new DirectCategory());
  for (const auto& s : sorts) {
    if (s.dim < 0) fail(ErrorKind::DimensionViolation, "sort " + s.id + " has negative dimension");
  }
  std::sort(sorts.begin(), sorts.end(),
            [](const SortDecl& a, const SortDecl& b) { return std::tie(a.dim, a.id) < std::tie(b.dim, b.id); });
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    if (!cat->sort_index_.emplace(sorts[i].id, static_cast<SortId>(i)).second)
      fail(ErrorKind::UnknownSort, "duplicate sort " + sorts[i].id);
  }
  cat->sorts_ = std::move(sorts);

  std::vector<Arrow> arrows;
  for (SortId s = 0; s < cat->num_sorts(); ++s)
    arrows.push_back(Arrow{identity_name(cat->sorts_[s].id), s, s, true});
  for (const auto& f : faces) {
    auto src = cat->find_sort(f.src);
    auto dst = cat->find_sort(f.dst);
    if (!src) fail(ErrorKind::UnknownSort, "face " + f.id + " has unknown source " + f.src);
    if (!dst) fail(ErrorKind::UnknownSort, "face " + f.id + " has unknown target " + f.dst);
    if (cat->dim(*src) >= cat->dim(*dst))
      fail(ErrorKind::DimensionViolation, "face " + f.id + " does not lower dimension");
    arrows.push_back(Arrow{f.id, *src, *dst, false});
  }
  std::sort(arrows.begin(), arrows.end(), [](const Arrow& a, const Arrow& b) {
    return std::make_tuple(a.dst, a.src, !a.identity, a.id) < std::make_tuple(b.dst, b.src, !b.identity, b.id);
  });
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    if (!cat->arrow_index_.emplace(arrows[a].id, static_cast<ArrowId>(a)).second)
      fail(ErrorKind::UnknownFace, "duplicate face " + arrows[a].id);
  }
  cat->arrows_ = std::move(arrows);

  const auto n = static_cast<std::size_t>(cat->num_sorts());
  const auto m = static_cast<std::size_t>(cat->num_arrows());
  cat->identity_.assign(n, -1);
  cat->into_.assign(n, {});
  cat->face_pos_.assign(m, -1);
  cat->hom_.assign(n * n, {});
  for (ArrowId a = 0; a < cat->num_arrows(); ++a) {
    const Arrow& ar = cat->arrows_[a];
    if (ar.identity) {
      cat->identity_[ar.dst] = a;
    } else {
      cat->face_pos_[a] = static_cast<int>(cat->into_[ar.dst].size());
      cat->into_[ar.dst].push_back(a);
    }
    cat->hom_[static_cast<std::size_t>(ar.src) * n + ar.dst].push_back(a);
  }

  cat->compose_.assign(m * m, -1);
  for (ArrowId a = 0; a < cat->num_arrows(); ++a) {
    if (!cat->arrows_[a].identity) continue;
    for (ArrowId b = 0; b < cat->num_arrows(); ++b) {
      if (cat->arrows_[b].dst == cat->arrows_[a].src) cat->compose_[a * m + b] = b;
      if (cat->arrows_[b].src == cat->arrows_[a].dst) cat->compose_[b * m + a] = b;
    }
  }
  for (const auto& c : compose) {
    auto first = cat->find_arrow(c.first);
    auto second = cat->find_arrow(c.second);
    auto result = cat->find_arrow(c.result);
    if (!first || !second || !result)
      fail(ErrorKind::UnknownFace, "composition entry (" + c.first + ", " + c.second + ") names an unknown face");
    const Arrow& f = cat->arrows_[*first];
    const Arrow& s = cat->arrows_[*second];
    const Arrow& r = cat->arrows_[*result];
    if (f.dst != s.src || r.src != f.src || r.dst != s.dst)
      fail(ErrorKind::CompositionGap, "composition entry (" + c.first + ", " + c.second + ") -> " + c.result +
                                          " is ill-typed");
    ArrowId& slot = cat->compose_[static_cast<std::size_t>(*second) * m + *first];
    if (slot != -1 && slot != *result)
      fail(ErrorKind::CompositionGap, "conflicting composites for (" + c.first + ", " + c.second + ")");
    slot = *result;
  }
  for (ArrowId outer = 0; outer < cat->num_arrows(); ++outer) {
    for (ArrowId inner = 0; inner < cat->num_arrows(); ++inner) {
      if (cat->arrows_[inner].dst != cat->arrows_[outer].src) continue;
      if (cat->compose_[static_cast<std::size_t>(outer) * m + inner] == -1)
        fail(ErrorKind::CompositionGap, "missing composite of " + cat->arrows_[inner].id + " then " +
                                            cat->arrows_[outer].id);
    }
  }
  for (ArrowId f = 0; f < cat->num_arrows(); ++f) {
    for (ArrowId g = 0; g < cat->num_arrows(); ++g) {
      if (cat->arrows_[g].dst != cat->arrows_[f].src) continue;
      for (ArrowId h = 0; h < cat->num_arrows(); ++h) {
        if (cat->arrows_[h].dst != cat->arrows_[g].src) continue;
        if (cat->compose(f, cat->compose(g, h)) != cat->compose(cat->compose(f, g), h))
          fail(ErrorKind::AssociativityFailure, "composition of " + cat->arrows_[h].id + ", " + cat->arrows_[g].id +
                                                    ", " + cat->arrows_[f].id + " is not associative");
      }
    }
  }
  return cat;
}

std::optional<SortId> DirectCategory::find_sort(const std::string& id) const {
  auto it = sort_index_.find(id);
  if (it == sort_index_.end()) return std::nullopt;
  return it->second;
}

SortId DirectCategory::sort_index(const std::string& id) const {
  auto s = find_sort(id);
  if (!s) fail(ErrorKind::UnknownSort, "unknown sort " + id);
  return *s;
}

int DirectCategory::max_dim() const { return sorts_.empty() ? -1 : sorts_.back().dim; }

int DirectCategory::sorts_up_to(int n) const {
  int k = 0;
  while (k < num_sorts() && sorts_[k].dim <= n) ++k;
  return k;
}

std::optional<ArrowId> DirectCategory::find_arrow(const std::string& id) const {
  auto it = arrow_index_.find(id);
  if (it == arrow_index_.end()) return std::nullopt;
  return it->second;
}

ArrowId DirectCategory::arrow_index(const std::string& id) const {
  auto a = find_arrow(id);
  if (!a) fail(ErrorKind::UnknownFace, "unknown face " + id);
  return *a;
}

ArrowId DirectCategory::compose(ArrowId outer, ArrowId inner) const {
  ArrowId r = compose_.at(static_cast<std::size_t>(outer) * arrows_.size() + inner);
  if (r < 0) fail(ErrorKind::CompositionGap, "arrows " + arrows_[inner].id + " and " + arrows_[outer].id +
                                                 " are not composable");
  return r;
}

std::vector<bool> DirectCategory::generating_faces(SortId s) const {
  std::vector<bool> gen(into(s).size(), true);
  for (ArrowId outer : into(s))
    for (ArrowId inner : into(arrows_[outer].src)) gen[face_position(compose(outer, inner))] = false;
  return gen;
}

CategoryPtr DirectCategory::truncate(int n) const {
  std::vector<SortDecl> sorts;
  for (const auto& s : sorts_)
    if (s.dim <= n) sorts.push_back(s);
  auto keep = [&](ArrowId a) { return sorts_[arrows_[a].dst].dim <= n; };
  std::vector<FaceDecl> faces;
  std::vector<ComposeDecl> comp;
  for (ArrowId a = 0; a < num_arrows(); ++a) {
    if (arrows_[a].identity || !keep(a)) continue;
    faces.push_back({arrows_[a].id, sorts_[arrows_[a].src].id, sorts_[arrows_[a].dst].id});
  }
  for (const auto& c : compose_decls())
    if (keep(arrow_index(c.second))) comp.push_back(c);
  return create(std::move(sorts), std::move(faces), std::move(comp));
}

bool DirectCategory::equals(const DirectCategory& other) const {
  if (this == &other) return true;
  if (sorts_.size() != other.sorts_.size() || arrows_.size() != other.arrows_.size()) return false;
  return is_truncation_of(other);
}

bool DirectCategory::is_truncation_of(const DirectCategory& other) const {
  if (this == &other) return true;
  if (sorts_.size() > other.sorts_.size() || arrows_.size() > other.arrows_.size()) return false;
  for (std::size_t s = 0; s < sorts_.size(); ++s)
    if (sorts_[s].id != other.sorts_[s].id || sorts_[s].dim != other.sorts_[s].dim) return false;
  if (sorts_.size() < other.sorts_.size() && other.sorts_[sorts_.size()].dim <= max_dim()) return false;
  for (std::size_t a = 0; a < arrows_.size(); ++a) {
    const Arrow& x = arrows_[a];
    const Arrow& y = other.arrows_[a];
    if (x.id != y.id || x.src != y.src || x.dst != y.dst || x.identity != y.identity) return false;
  }
  for (ArrowId f = 0; f < num_arrows(); ++f)
    for (ArrowId g = 0; g < num_arrows(); ++g)
      if (arrows_[g].dst == arrows_[f].src && compose(f, g) != other.compose(f, g)) return false;
  return true;
}

std::vector<FaceDecl> DirectCategory::face_decls() const {
  std::vector<FaceDecl> out;
  for (const auto& a : arrows_)
    if (!a.identity) out.push_back({a.id, sorts_[a.src].id, sorts_[a.dst].id});
  return out;
}

std::vector<ComposeDecl> DirectCategory::compose_decls() const {
  std::vector<ComposeDecl> out;
  for (ArrowId outer = 0; outer < num_arrows(); ++outer) {
    if (arrows_[outer].identity) continue;
    for (ArrowId inner = 0; inner < num_arrows(); ++inner) {
      if (arrows_[inner].identity || arrows_[inner].dst != arrows_[outer].src) continue;
      out.push_back({arrows_[inner].id, arrows_[outer].id, arrows_[compose(outer, inner)].id});
    }
  }
  return out;
}

bool same_base(const DirectCategory& a, const DirectCategory& b) { return a.equals(b); }

}  // namespace cptd
