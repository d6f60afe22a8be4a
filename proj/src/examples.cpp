#include "computads/examples.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "computads/error.hpp"
#include "computads/factorization.hpp"
#include "computads/term_monad.hpp"

namespace cptd::examples {

namespace {

std::string join_ints(const std::vector<int>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += sep;
    out += std::to_string(xs[k]);
  }
  return out;
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// All subsets of a sorted vector, each sorted.
std::vector<std::vector<int>> subsets(const std::vector<int>& xs) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << xs.size()); ++mask) {
    std::vector<int> s;
    for (std::size_t k = 0; k < xs.size(); ++k)
      if (mask & (1u << k)) s.push_back(xs[k]);
    out.push_back(std::move(s));
  }
  return out;
}

// True when the classifying morphism of t factors through the injective
// variable-to-variable rho with full support.
bool lifts_with_full_support(const ComputadPtr& c, const Term& t, const ComputadMorphism& rho) {
  auto lifted = lift_through_mono(rho, term_classifier(c, t));
  return lifted && is_epi(*lifted);
}

FunctionSymbol finish_symbol(const SignaturePtr& sig, std::string id, SortId sort, Presheaf arity,
                             std::vector<Term> boundary) {
  FunctionSymbol f{std::move(id), sort, std::move(arity), std::move(boundary)};
  auto ctx = Computad::free(f.arity, sig);
  detail::complete_face_family(*ctx, sort, f.boundary, ErrorKind::BoundaryIllTyped, "symbol " + f.id);
  detail::check_face_family(*ctx, sort, f.boundary, "symbol " + f.id);
  return f;
}

}  // namespace

// ---- discrete -------------------------------------------------------------

CategoryPtr discrete_category(const std::vector<std::string>& sorts) {
  std::vector<SortDecl> decls;
  for (const auto& s : sorts) decls.push_back({s, 0});
  return DirectCategory::create(decls, {}, {});
}

SignaturePtr discrete_signature(CategoryPtr base, const std::vector<DiscreteSymbol>& symbols) {
  std::vector<SymbolDecl> decls;
  for (const auto& sym : symbols) {
    std::vector<std::pair<std::string, std::string>> cells;
    for (std::size_t k = 0; k < sym.inputs.size(); ++k) cells.emplace_back("x" + std::to_string(k), sym.inputs[k]);
    decls.push_back({sym.id, sym.sort, discrete(base, cells), {}});
  }
  return Signature::create(std::move(base), std::move(decls));
}

SignaturePtr group_signature() {
  return discrete_signature(discrete_category({"*"}),
                            {{"add", "*", {"*", "*"}}, {"neg", "*", {"*"}}, {"zero", "*", {}}});
}

SignaturePtr module_signature() {
  return discrete_signature(discrete_category({"R", "V"}), {{"add_R", "R", {"R", "R"}},
                                                            {"mul_R", "R", {"R", "R"}},
                                                            {"neg_R", "R", {"R"}},
                                                            {"one_R", "R", {}},
                                                            {"zero_R", "R", {}},
                                                            {"add_V", "V", {"V", "V"}},
                                                            {"mul_V", "V", {"R", "V"}},
                                                            {"neg_V", "V", {"V"}},
                                                            {"zero_V", "V", {}}});
}

// ---- simplices ------------------------------------------------------------

std::string simplex_sort(int m) { return "[" + std::to_string(m) + "]"; }

std::string delta_arrow(int k, const std::vector<int>& image) {
  std::string name = "d" + std::to_string(k) + "_";
  for (int v = 0; v <= k; ++v)
    if (!std::binary_search(image.begin(), image.end(), v)) name += std::to_string(v);
  return name;
}

std::string delta_face(int k, int i) { return "d" + std::to_string(k) + "_" + std::to_string(i); }

CategoryPtr delta_plus(int n) {
  if (n < 0 || n > 9) fail(ErrorKind::BadIndex, "delta_plus supports 0 <= n <= 9, got " + std::to_string(n));
  std::vector<SortDecl> sorts;
  for (int m = 0; m <= n; ++m) sorts.push_back({simplex_sort(m), m});
  // images[m][k]: strictly increasing maps [m] -> [k] with m < k.
  std::vector<std::vector<std::vector<std::vector<int>>>> images(n + 1, std::vector<std::vector<std::vector<int>>>(n + 1));
  std::vector<FaceDecl> faces;
  for (int k = 1; k <= n; ++k)
    for (const auto& sub : subsets([&] {
           std::vector<int> all(k + 1);
           for (int v = 0; v <= k; ++v) all[v] = v;
           return all;
         }())) {
      const int m = static_cast<int>(sub.size()) - 1;
      if (m < 0 || m >= k) continue;
      images[m][k].push_back(sub);
      faces.push_back({delta_arrow(k, sub), simplex_sort(m), simplex_sort(k)});
    }
  std::vector<ComposeDecl> compose;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k)
        for (const auto& a : images[i][j])
          for (const auto& b : images[j][k]) {
            std::vector<int> c;
            for (int v : a) c.push_back(b[v]);
            compose.push_back({delta_arrow(j, a), delta_arrow(k, b), delta_arrow(k, c)});
          }
  return DirectCategory::create(sorts, faces, compose);
}

Presheaf simplex(const CategoryPtr& delta, int m) { return representable(delta, delta->sort_index(simplex_sort(m))); }

Presheaf boundary_simplex(const CategoryPtr& delta, int m) {
  return boundary_representable(delta, delta->sort_index(simplex_sort(m)));
}

Presheaf horn(const CategoryPtr& delta, int m, int k) {
  if (m < 1 || k < 0 || k > m)
    fail(ErrorKind::BadIndex, "horn needs m >= 1 and 0 <= k <= m, got m=" + std::to_string(m) +
                                  ", k=" + std::to_string(k));
  if (!delta->find_sort(simplex_sort(m))) fail(ErrorKind::BadIndex, "sort " + simplex_sort(m) + " is not in the base");
  Presheaf b = boundary_simplex(delta, m);
  std::vector<bool> keep(b.total_cells(), true);
  keep[b.flat(b.cell(delta_face(m, k)))] = false;
  return sub_presheaf(b, keep);
}

std::string kan_face_symbol(int k, int m) { return "face_" + std::to_string(k) + "_" + std::to_string(m); }
std::string kan_filler_symbol(int k, int m) { return "filler_" + std::to_string(k) + "_" + std::to_string(m); }

SignaturePtr sigma_kan(int n) {
  auto delta = delta_plus(n);
  std::vector<SymbolDecl> decls;
  for (int m = 0; m + 1 <= n; ++m) {
    const SortId s = delta->sort_index(simplex_sort(m));
    for (int k = 0; k <= m + 1; ++k) {
      SymbolDecl d{kan_face_symbol(k, m + 1), simplex_sort(m), horn(delta, m + 1, k), {}};
      const ArrowId missing = delta->arrow_index(delta_face(m + 1, k));
      for (ArrowId e : delta->into(s))
        d.boundary.emplace_back(delta->arrow(e).id,
                                RawTerm::make_var(delta->arrow(delta->compose(missing, e)).id));
      decls.push_back(std::move(d));
    }
  }
  for (int m = 1; m <= n; ++m)
    for (int k = 0; k <= m; ++k) {
      Presheaf h = horn(delta, m, k);
      std::vector<RawArg> args;
      for (SortId s = 0; s < delta->num_sorts(); ++s)
        for (const auto& cell : h.cells(s)) args.push_back({cell, RawTerm::make_var(cell)});
      SymbolDecl d{kan_filler_symbol(k, m), simplex_sort(m), h, {}};
      for (int i = 0; i <= m; ++i)
        d.boundary.emplace_back(delta_face(m, i), i == k ? RawTerm::make_app(kan_face_symbol(k, m), args)
                                                         : RawTerm::make_var(delta_face(m, i)));
      decls.push_back(std::move(d));
    }
  return Signature::create(delta, std::move(decls));
}

// ---- cubes and grids ------------------------------------------------------

std::string cube_sort(const std::vector<int>& subset) { return "{" + join_ints(subset, ",") + "}"; }

std::string cube_face(const std::vector<int>& target, const std::map<int, int>& alpha) {
  std::string name = cube_sort(target) + "/";
  for (const auto& [j, a] : alpha) name += std::to_string(j) + (a ? "+" : "-");
  return name;
}

CategoryPtr cube_category_on(const std::vector<int>& directions) {
  std::vector<int> dirs = directions;
  std::sort(dirs.begin(), dirs.end());
  dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
  if (dirs.size() > 5) fail(ErrorKind::BadIndex, "at most 5 directions are supported");
  const auto objects = subsets(dirs);
  std::vector<SortDecl> sorts;
  for (const auto& o : objects) sorts.push_back({cube_sort(o), static_cast<int>(o.size())});

  // Faces into I are pairs (J, alpha) with J a proper subset and alpha on I \ J.
  struct Face {
    std::vector<int> src;
    std::vector<int> dst;
    std::map<int, int> alpha;
  };
  auto faces_into = [&](const std::vector<int>& target) {
    std::vector<Face> out;
    for (const auto& removed : subsets(target)) {
      if (removed.empty()) continue;
      for (unsigned bits = 0; bits < (1u << removed.size()); ++bits) {
        Face f{minus(target, removed), target, {}};
        for (std::size_t k = 0; k < removed.size(); ++k) f.alpha[removed[k]] = (bits >> k) & 1u;
        out.push_back(std::move(f));
      }
    }
    return out;
  };

  std::vector<FaceDecl> faces;
  std::vector<ComposeDecl> compose;
  for (const auto& target : objects)
    for (const auto& outer : faces_into(target)) {
      faces.push_back({cube_face(outer.dst, outer.alpha), cube_sort(outer.src), cube_sort(outer.dst)});
      for (const auto& inner : faces_into(outer.src)) {
        std::map<int, int> both = outer.alpha;
        both.insert(inner.alpha.begin(), inner.alpha.end());
        compose.push_back({cube_face(inner.dst, inner.alpha), cube_face(outer.dst, outer.alpha),
                           cube_face(outer.dst, both)});
      }
    }
  return DirectCategory::create(sorts, faces, compose);
}

CategoryPtr cube_category(int max_direction) {
  if (max_direction < -1) fail(ErrorKind::BadIndex, "negative direction bound");
  std::vector<int> dirs;
  for (int i = 0; i <= max_direction; ++i) dirs.push_back(i);
  return cube_category_on(dirs);
}

std::string grid_cell(const std::vector<int>& sort, const std::vector<int>& position) {
  return cube_sort(sort) + "@" + join_ints(position, ",");
}

namespace {

std::vector<int> parse_cube_sort(const std::string& id) {
  std::vector<int> out;
  std::string body = id.substr(1, id.size() - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    out.push_back(std::stoi(body.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

void check_grid(const Grid& g, const CategoryPtr& cube) {
  if (g.directions.size() != g.counts.size()) fail(ErrorKind::BadIndex, "grid directions and counts differ in length");
  if (!std::is_sorted(g.directions.begin(), g.directions.end()) ||
      std::adjacent_find(g.directions.begin(), g.directions.end()) != g.directions.end())
    fail(ErrorKind::BadIndex, "grid directions must be strictly increasing");
  for (int c : g.counts)
    if (c < 0) fail(ErrorKind::BadIndex, "grid counts must be non-negative");
  if (!cube->find_sort(cube_sort(g.directions)))
    fail(ErrorKind::BadSubset, "grid directions " + cube_sort(g.directions) + " are not an object of the cube category");
}

// Positions R with R(j) < G(j) on J and R(i) <= G(i) elsewhere.
std::vector<std::vector<int>> positions_of(const Grid& g, const std::vector<int>& sort) {
  std::vector<std::vector<int>> out;
  std::vector<int> r(g.directions.size(), 0);
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == r.size()) {
      out.push_back(r);
      return;
    }
    const bool open = std::binary_search(sort.begin(), sort.end(), g.directions[k]);
    const int top = open ? g.counts[k] - 1 : g.counts[k];
    for (int v = 0; v <= top; ++v) {
      r[k] = v;
      go(k + 1);
    }
  };
  go(0);
  return out;
}

}  // namespace

Presheaf grid_positions(const Grid& g, const CategoryPtr& cube) {
  check_grid(g, cube);
  const auto& cat = *cube;
  std::vector<std::vector<std::string>> cells(cat.num_sorts());
  std::vector<std::vector<std::vector<int>>> pos(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    auto j = parse_cube_sort(cat.sort(s).id);
    if (!is_subset(j, g.directions)) continue;
    pos[s] = positions_of(g, j);
    for (const auto& r : pos[s]) cells[s].push_back(grid_cell(j, r));
  }
  std::vector<std::vector<int>> action(cat.num_arrows());
  for (ArrowId a = 0; a < cat.num_arrows(); ++a) {
    const Arrow& ar = cat.arrow(a);
    if (ar.identity) continue;
    // Face id "<I>/j+k-..." adds alpha on the removed directions.
    const std::string spec = ar.id.substr(ar.id.find('/') + 1);
    std::map<int, int> alpha;
    std::size_t p = 0;
    while (p < spec.size()) {
      std::size_t q = spec.find_first_of("+-", p);
      alpha[std::stoi(spec.substr(p, q - p))] = spec[q] == '+' ? 1 : 0;
      p = q + 1;
    }
    auto src_sort = parse_cube_sort(cat.sort(ar.src).id);
    for (const auto& r : pos[ar.dst]) {
      std::vector<int> moved = r;
      for (std::size_t k = 0; k < g.directions.size(); ++k) {
        auto it = alpha.find(g.directions[k]);
        if (it != alpha.end()) moved[k] += it->second;
      }
      const std::string name = grid_cell(src_sort, moved);
      const auto& targets = cells[ar.src];
      action[a].push_back(static_cast<int>(std::find(targets.begin(), targets.end(), name) - targets.begin()));
    }
  }
  return Presheaf::from_tables(cube, std::move(cells), std::move(action));
}

std::vector<int> grid_counts(const Grid& g, const CategoryPtr& cube) {
  Presheaf p = grid_positions(g, cube);
  std::vector<int> out;
  for (SortId s = 0; s < cube->num_sorts(); ++s) out.push_back(p.num_cells(s));
  return out;
}

GridInclusion grid_inclusion(const Grid& g, const std::map<int, int>& alpha, const CategoryPtr& cube) {
  check_grid(g, cube);
  std::vector<int> j;
  for (const auto& [d, a] : alpha) {
    if (a != 0 && a != 1) fail(ErrorKind::BadIndex, "alpha must be 0 or 1, got " + std::to_string(a));
    j.push_back(d);
  }
  if (!is_subset(j, g.directions))
    fail(ErrorKind::BadSubset, cube_sort(j) + " is not a subset of the grid directions " + cube_sort(g.directions));
  GridInclusion out;
  for (std::size_t k = 0; k < g.directions.size(); ++k)
    if (!alpha.count(g.directions[k])) {
      out.face_grid.directions.push_back(g.directions[k]);
      out.face_grid.counts.push_back(g.counts[k]);
    }
  out.source = grid_positions(out.face_grid, cube);
  out.target = grid_positions(g, cube);
  const auto& cat = *cube;
  out.map.components.assign(cat.num_sorts(), {});
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    auto sort = parse_cube_sort(cat.sort(s).id);
    for (int c = 0; c < out.source.num_cells(s); ++c) {
      const std::string& name = out.source.cell_name(s, c);
      std::vector<int> r;
      std::string coords = name.substr(name.find('@') + 1);
      std::size_t p = 0;
      while (p < coords.size()) {
        std::size_t q = coords.find(',', p);
        if (q == std::string::npos) q = coords.size();
        r.push_back(std::stoi(coords.substr(p, q - p)));
        p = q + 1;
      }
      std::vector<int> full;
      std::size_t next = 0;
      for (std::size_t k = 0; k < g.directions.size(); ++k) {
        auto it = alpha.find(g.directions[k]);
        full.push_back(it != alpha.end() ? it->second * g.counts[k] : r.at(next++));
      }
      out.map.components[s].push_back(out.target.cell(grid_cell(sort, full)).index);
    }
  }
  return out;
}

SignaturePtr sigma_mcat_symbol(const SignaturePtr& sig, const std::string& id, const Grid& g,
                               const std::map<std::pair<int, int>, RawTerm>& a) {
  const auto& cube = sig->base_ptr();
  const auto& cat = *cube;
  Presheaf arity = grid_positions(g, cube);
  const SortId sort = cat.sort_index(cube_sort(g.directions));
  auto c = Computad::free(arity, sig);

  for (const auto& [key, raw] : a)
    if (!std::binary_search(g.directions.begin(), g.directions.end(), key.first) || (key.second != 0 && key.second != 1))
      fail(ErrorKind::SideConditionFailure, "symbol " + id + ": unexpected boundary index (" +
                                                std::to_string(key.first) + ", " + std::to_string(key.second) + ")");
  std::map<std::pair<int, int>, Term> t;
  for (int i : g.directions)
    for (int alpha = 0; alpha <= 1; ++alpha) {
      auto it = a.find({i, alpha});
      if (it == a.end())
        fail(ErrorKind::SideConditionFailure, "symbol " + id + ": missing boundary term for direction " +
                                                  std::to_string(i) + ", side " + std::to_string(alpha));
      Term term = resolve_term(*c, it->second);
      const std::string want = cube_sort(minus(g.directions, {i}));
      if (cat.sort(term.sort()).id != want)
        fail(ErrorKind::SideConditionFailure, "symbol " + id + ": boundary term for (" + std::to_string(i) + ", " +
                                                  std::to_string(alpha) + ") has sort " + cat.sort(term.sort()).id +
                                                  ", expected " + want);
      t[{i, alpha}] = term;
    }

  // Corners: restricting t_i^a along direction j agrees with restricting t_j^b along i.
  for (int i : g.directions)
    for (int j : g.directions) {
      if (i >= j) continue;
      for (int ai = 0; ai <= 1; ++ai)
        for (int bj = 0; bj <= 1; ++bj) {
          ArrowId along_j = cat.arrow_index(cube_face(minus(g.directions, {i}), {{j, bj}}));
          ArrowId along_i = cat.arrow_index(cube_face(minus(g.directions, {j}), {{i, ai}}));
          if (!(boundary(*c, along_j, t[{i, ai}]) == boundary(*c, along_i, t[{j, bj}])))
            fail(ErrorKind::SideConditionFailure, "symbol " + id + ": boundary terms (" + std::to_string(i) + ", " +
                                                      std::to_string(ai) + ") and (" + std::to_string(j) + ", " +
                                                      std::to_string(bj) + ") disagree on their common corner");
        }
    }

  for (const auto& [key, term] : t) {
    auto inc = grid_inclusion(g, {{key.first, key.second}}, cube);
    auto rho = free_map(Computad::free(inc.source, sig), c, inc.map);
    if (!lifts_with_full_support(c, term, rho))
      fail(ErrorKind::SideConditionFailure, "symbol " + id + ": boundary term (" + std::to_string(key.first) + ", " +
                                                std::to_string(key.second) +
                                                ") is not the image of a full-support term of the face grid");
  }

  std::vector<Term> family(cat.into(sort).size());
  for (const auto& [key, term] : t)
    family[cat.face_position(cat.arrow_index(cube_face(g.directions, {{key.first, key.second}})))] = term;
  return Signature::extend(sig, {finish_symbol(sig, id, sort, std::move(arity), std::move(family))});
}

// ---- globes and pasting diagrams ------------------------------------------

std::string globe_arrow(char kind, int from, int to) {
  return std::string(1, kind) + std::to_string(from) + "_" + std::to_string(to);
}

CategoryPtr globe_category(int n) {
  if (n < 0) fail(ErrorKind::BadIndex, "globe dimension must be non-negative");
  std::vector<SortDecl> sorts;
  for (int k = 0; k <= n; ++k) sorts.push_back({std::to_string(k), k});
  std::vector<FaceDecl> faces;
  std::vector<ComposeDecl> compose;
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j < k; ++j)
      for (char kind : {'s', 't'}) {
        faces.push_back({globe_arrow(kind, j, k), std::to_string(j), std::to_string(k)});
        for (int m = 0; m < j; ++m)
          for (char inner : {'s', 't'})
            compose.push_back({globe_arrow(inner, m, j), globe_arrow(kind, j, k), globe_arrow(inner, m, k)});
      }
  return DirectCategory::create(sorts, faces, compose);
}

BatTree parse_tree(const std::string& text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  std::function<BatTree()> node = [&]() -> BatTree {
    skip();
    if (pos >= text.size() || text[pos] != '[') fail(ErrorKind::ParseError, "expected '[' in tree " + text);
    ++pos;
    BatTree t;
    skip();
    if (pos < text.size() && text[pos] == ']') {
      ++pos;
      return t;
    }
    while (true) {
      t.children.push_back(node());
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ']') {
        ++pos;
        return t;
      }
      fail(ErrorKind::ParseError, "expected ',' or ']' in tree " + text);
    }
  };
  BatTree t = node();
  skip();
  if (pos != text.size()) fail(ErrorKind::ParseError, "trailing characters in tree " + text);
  return t;
}

std::string print_tree(const BatTree& t) {
  std::string out = "[";
  for (std::size_t k = 0; k < t.children.size(); ++k) {
    if (k) out += ",";
    out += print_tree(t.children[k]);
  }
  return out + "]";
}

int tree_dim(const BatTree& t) {
  int d = 0;
  for (const auto& c : t.children) d = std::max(d, 1 + tree_dim(c));
  return d;
}

BatTree boundary_tree(const BatTree& t, int n) {
  if (n < 0) fail(ErrorKind::BadIndex, "boundary dimension must be non-negative");
  BatTree out;
  if (n == 0) return out;
  for (const auto& c : t.children) out.children.push_back(boundary_tree(c, n - 1));
  return out;
}

namespace {

struct TreeCell {
  std::vector<int> path;
  int point;
};

std::string tree_cell_name(const std::vector<int>& path, int point) {
  return path.empty() ? std::to_string(point) : join_ints(path, "/") + "/" + std::to_string(point);
}

const BatTree& node_at(const BatTree& t, const std::vector<int>& path) {
  const BatTree* n = &t;
  for (int k : path) n = &n->children.at(k);
  return *n;
}

// Cells of each dimension k: nodes at depth k, each with #children + 1 points.
std::vector<std::vector<TreeCell>> tree_cells(const BatTree& t) {
  std::vector<std::vector<TreeCell>> out(tree_dim(t) + 1);
  std::vector<int> path;
  std::function<void(const BatTree&)> go = [&](const BatTree& n) {
    for (int j = 0; j <= static_cast<int>(n.children.size()); ++j) out[path.size()].push_back({path, j});
    for (std::size_t k = 0; k < n.children.size(); ++k) {
      path.push_back(static_cast<int>(k));
      go(n.children[k]);
      path.pop_back();
    }
  };
  go(t);
  return out;
}

PresheafMorphism tree_end(const BatTree& t, int n, const CategoryPtr& globes, bool target) {
  Presheaf from = tree_positions(boundary_tree(t, n), globes);
  Presheaf to = tree_positions(t, globes);
  PresheafMorphism m;
  m.components.assign(globes->num_sorts(), {});
  for (SortId s = 0; s < globes->num_sorts(); ++s)
    for (int c = 0; c < from.num_cells(s); ++c) {
      const std::string& name = from.cell_name(s, c);
      std::string mapped = name;
      if (globes->dim(s) == n && target) {
        std::vector<int> path;
        std::size_t p = 0;
        std::string rest = name;
        while ((p = rest.find('/')) != std::string::npos) {
          path.push_back(std::stoi(rest.substr(0, p)));
          rest = rest.substr(p + 1);
        }
        mapped = tree_cell_name(path, static_cast<int>(node_at(t, path).children.size()));
      }
      m.components[s].push_back(to.cell(mapped).index);
    }
  return m;
}

}  // namespace

Presheaf tree_positions(const BatTree& t, const CategoryPtr& globes) {
  const int d = tree_dim(t);
  if (d > globes->max_dim())
    fail(ErrorKind::BadIndex, "tree of dimension " + std::to_string(d) + " needs globes up to that dimension");
  const auto cells = tree_cells(t);
  const auto& cat = *globes;
  std::vector<std::vector<std::string>> names(cat.num_sorts());
  for (std::size_t k = 0; k < cells.size(); ++k)
    for (const auto& c : cells[k]) names[cat.sort_index(std::to_string(k))].push_back(tree_cell_name(c.path, c.point));
  std::vector<std::vector<int>> action(cat.num_arrows());
  for (ArrowId a = 0; a < cat.num_arrows(); ++a) {
    const Arrow& ar = cat.arrow(a);
    if (ar.identity) continue;
    const int k = cat.dim(ar.dst);
    const int m = cat.dim(ar.src);
    const bool target = ar.id[0] == 't';
    if (k >= static_cast<int>(cells.size())) continue;
    for (const auto& c : cells[k]) {
      std::vector<int> path(c.path.begin(), c.path.begin() + m);
      const int point = c.path[m] + (target ? 1 : 0);
      const auto& list = names[ar.src];
      action[a].push_back(static_cast<int>(std::find(list.begin(), list.end(), tree_cell_name(path, point)) - list.begin()));
    }
  }
  return Presheaf::from_tables(globes, std::move(names), std::move(action));
}

PresheafMorphism tree_source(const BatTree& t, int n, const CategoryPtr& globes) {
  return tree_end(t, n, globes, false);
}

PresheafMorphism tree_target(const BatTree& t, int n, const CategoryPtr& globes) {
  return tree_end(t, n, globes, true);
}

SignaturePtr sigma_cat_symbol(const SignaturePtr& sig, const std::string& id, const BatTree& tree, const RawTerm& a,
                              const RawTerm& b, bool groupoidal) {
  const auto& globes = sig->base_ptr();
  const auto& cat = *globes;
  Presheaf arity = tree_positions(tree, globes);
  auto c = Computad::free(arity, sig);
  const Term ta = resolve_term(*c, a);
  const Term tb = resolve_term(*c, b);
  if (ta.sort() != tb.sort())
    fail(ErrorKind::SideConditionFailure, "symbol " + id + ": the two terms have different sorts");
  const int n = cat.dim(ta.sort());
  if (tree_dim(tree) > n + 1)
    fail(ErrorKind::SideConditionFailure, "symbol " + id + ": tree " + print_tree(tree) + " has dimension above " +
                                              std::to_string(n + 1));
  auto top = cat.find_sort(std::to_string(n + 1));
  if (!top) fail(ErrorKind::SideConditionFailure, "symbol " + id + ": no sort of dimension " + std::to_string(n + 1));
  if (n >= 1)
    for (char kind : {'s', 't'}) {
      ArrowId e = cat.arrow_index(globe_arrow(kind, n - 1, n));
      if (!(boundary(*c, e, ta) == boundary(*c, e, tb)))
        fail(ErrorKind::SideConditionFailure, "symbol " + id + ": the terms are not parallel");
    }
  if (!groupoidal) {
    BatTree edge = boundary_tree(tree, n);
    auto edge_c = Computad::free(tree_positions(edge, globes), sig);
    if (!lifts_with_full_support(c, ta, free_map(edge_c, c, tree_source(tree, n, globes))))
      fail(ErrorKind::SideConditionFailure, "symbol " + id + ": the first term does not cover the source boundary");
    if (!lifts_with_full_support(c, tb, free_map(edge_c, c, tree_target(tree, n, globes))))
      fail(ErrorKind::SideConditionFailure, "symbol " + id + ": the second term does not cover the target boundary");
  }
  std::vector<Term> family(cat.into(*top).size());
  family[cat.face_position(cat.arrow_index(globe_arrow('s', n, n + 1)))] = ta;
  family[cat.face_position(cat.arrow_index(globe_arrow('t', n, n + 1)))] = tb;
  return Signature::extend(sig, {finish_symbol(sig, id, *top, std::move(arity), std::move(family))});
}

}  // namespace cptd::examples
