#include "computads/colimit.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "computads/error.hpp"
#include "computads/term_monad.hpp"

namespace cptd {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool same_signature(const Signature& a, const Signature& b) {
  if (&a == &b) return true;
  if (a.num_symbols() != b.num_symbols() || !a.base().equals(b.base())) return false;
  for (int f = 0; f < a.num_symbols(); ++f)
    if (a.symbol(f).id != b.symbol(f).id || a.symbol(f).sort != b.symbol(f).sort) return false;
  return true;
}

}  // namespace

Colimit colimit_var(const Diagram& d) {
  if (d.nodes.empty()) fail(ErrorKind::BadIndex, "a colimit needs at least one node");
  const SignaturePtr& sig = d.nodes[0]->signature_ptr();
  const auto& cat = sig->base();
  const int n = static_cast<int>(d.nodes.size());
  for (const auto& c : d.nodes)
    if (!same_signature(c->signature(), *sig)) fail(ErrorKind::BaseMismatch, "diagram nodes over different signatures");

  // global numbering of (node, sort, generator)
  std::vector<std::vector<int>> offset(n, std::vector<int>(cat.num_sorts()));
  int total = 0;
  for (int k = 0; k < n; ++k)
    for (SortId s = 0; s < cat.num_sorts(); ++s) {
      offset[k][s] = total;
      total += d.nodes[k]->num_generators(s);
    }
  UnionFind uf(total);
  for (const auto& e : d.edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) fail(ErrorKind::BadIndex, "edge outside the diagram");
    const auto& src = *d.nodes[e.from];
    const auto& dst = *d.nodes[e.to];
    for (SortId s = 0; s < cat.num_sorts(); ++s)
      if (e.map.src->num_generators(s) != src.num_generators(s) ||
          e.map.dst->num_generators(s) != dst.num_generators(s))
        fail(ErrorKind::EndpointMismatch, "edge morphism does not match its nodes");
    auto m = var_map(e.map);
    for (SortId s = 0; s < cat.num_sorts(); ++s)
      for (int g = 0; g < src.num_generators(s); ++g) uf.unite(offset[e.from][s] + g, offset[e.to][s] + m[s][g]);
  }

  // classes per sort, keyed by their least (name, node) member
  struct Class {
    SortId sort;
    int node, gen;
  };
  std::map<int, std::pair<std::string, int>> best;  // root -> least (name, node)
  std::map<int, Class> rep;
  for (int k = 0; k < n; ++k)
    for (SortId s = 0; s < cat.num_sorts(); ++s)
      for (int g = 0; g < d.nodes[k]->num_generators(s); ++g) {
        const int root = uf.find(offset[k][s] + g);
        std::pair<std::string, int> key{d.nodes[k]->generator_name(s, g), k};
        auto it = best.find(root);
        if (it == best.end() || key < it->second) {
          best[root] = key;
          rep[root] = Class{s, k, g};
        }
      }
  std::vector<std::pair<std::pair<std::string, int>, int>> ordered;
  for (const auto& [root, key] : best) ordered.push_back({key, root});
  std::sort(ordered.begin(), ordered.end());
  std::set<std::string> used;
  std::map<int, std::string> name_of;
  for (const auto& [key, root] : ordered) {
    std::string name = key.first;
    while (used.count(name)) name += "#" + std::to_string(key.second);
    used.insert(name);
    name_of[root] = name;
  }

  // apex generators in class order, before the constructor sorts them
  std::vector<std::vector<std::string>> names(cat.num_sorts());
  std::map<int, int> local;  // root -> index among its sort
  for (const auto& [key, root] : ordered) {
    SortId s = rep[root].sort;
    local[root] = static_cast<int>(names[s].size());
    names[s].push_back(name_of[root]);
  }
  auto rename_for = [&](int k) {
    std::vector<std::vector<int>> r(cat.num_sorts());
    for (SortId s = 0; s < cat.num_sorts(); ++s)
      for (int g = 0; g < d.nodes[k]->num_generators(s); ++g) r[s].push_back(local[uf.find(offset[k][s] + g)]);
    return r;
  };
  std::vector<std::vector<std::vector<int>>> renames;
  for (int k = 0; k < n; ++k) renames.push_back(rename_for(k));
  std::vector<std::vector<std::vector<Term>>> gluing(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s) gluing[s].resize(names[s].size());
  for (const auto& [key, root] : ordered) {
    const Class& c = rep[root];
    std::vector<Term> fam;
    for (const Term& t : d.nodes[c.node]->gluing_family(c.sort, c.gen)) fam.push_back(rename_vars(t, renames[c.node]));
    gluing[c.sort][local[root]] = std::move(fam);
  }
  Colimit out;
  out.apex = Computad::from_terms(sig, names, std::move(gluing));
  for (int k = 0; k < n; ++k) {
    std::vector<std::vector<int>> m(cat.num_sorts());
    for (SortId s = 0; s < cat.num_sorts(); ++s)
      for (int g = 0; g < d.nodes[k]->num_generators(s); ++g)
        m[s].push_back(out.apex->generator(name_of[uf.find(offset[k][s] + g)]).index);
    out.cocone.push_back(var_morphism(d.nodes[k], out.apex, m));
  }
  return out;
}

Colimit pushout_var(const ComputadMorphism& f, const ComputadMorphism& g) {
  Diagram d;
  d.nodes = {f.src, f.dst, g.dst};
  d.edges = {{0, 1, f}, {0, 2, g}};
  return colimit_var(d);
}

Colimit coproduct(const std::vector<ComputadPtr>& cs) {
  Diagram d;
  d.nodes = cs;
  return colimit_var(d);
}

namespace {

// Backtracking search for generator maps c -> d, processed from the top
// dimension down. Matching a gluing term forces the images of the generators
// it mentions.
class VarSearch {
 public:
  VarSearch(const Computad& c, const Computad& d, bool injective) : c_(c), d_(d), injective_(injective) {
    const auto& cat = c.base();
    map_.resize(cat.num_sorts());
    used_.resize(cat.num_sorts());
    for (SortId s = 0; s < cat.num_sorts(); ++s) {
      map_[s].assign(c.num_generators(s), -1);
      used_[s].assign(d.num_generators(s), 0);
      for (int g = 0; g < c.num_generators(s); ++g) order_.push_back({s, g});
    }
    std::stable_sort(order_.begin(), order_.end(),
                     [&](const GenRef& a, const GenRef& b) { return cat.dim(a.sort) > cat.dim(b.sort); });
  }

  void run(const std::function<bool(const std::vector<std::vector<int>>&)>& visit) {
    const auto& cat = c_.base();
    if (injective_)
      for (SortId s = 0; s < cat.num_sorts(); ++s)
        if (c_.num_generators(s) > d_.num_generators(s)) return;
    visit_ = &visit;
    step(0);
  }

 private:
  bool assign(SortId s, int g, int w) {
    if (map_[s][g] >= 0) return map_[s][g] == w;
    if (injective_ && used_[s][w]) return false;
    map_[s][g] = w;
    ++used_[s][w];
    trail_.push_back({s, g});
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [s, g] = trail_.back();
      trail_.pop_back();
      --used_[s][map_[s][g]];
      map_[s][g] = -1;
    }
  }

  bool unify(const Term& tc, const Term& td) {
    if (tc.is_var()) return td.is_var() && td.sort() == tc.sort() && assign(tc.sort(), tc.generator(), td.generator());
    if (td.is_var() || td.symbol() != tc.symbol() || td.args().size() != tc.args().size()) return false;
    for (std::size_t k = 0; k < tc.args().size(); ++k)
      if (!unify(tc.args()[k], td.args()[k])) return false;
    return true;
  }

  // Returns false once the visitor asks to stop.
  bool step(std::size_t k) {
    if (k == order_.size()) return (*visit_)(map_);
    auto [s, g] = order_[k];
    std::vector<int> candidates;
    if (map_[s][g] >= 0)
      candidates.push_back(map_[s][g]);
    else
      for (int w = 0; w < d_.num_generators(s); ++w)
        if (!injective_ || !used_[s][w]) candidates.push_back(w);
    for (int w : candidates) {
      const std::size_t mark = trail_.size();
      bool ok = assign(s, g, w);
      const auto& fc = c_.gluing_family(s, g);
      const auto& fd = d_.gluing_family(s, w);
      for (std::size_t p = 0; ok && p < fc.size(); ++p) ok = unify(fc[p], fd[p]);
      if (ok && !step(k + 1)) {
        undo(mark);
        return false;
      }
      undo(mark);
    }
    return true;
  }

  const Computad& c_;
  const Computad& d_;
  bool injective_;
  std::vector<std::vector<int>> map_;
  std::vector<std::vector<int>> used_;
  std::vector<GenRef> order_;
  std::vector<GenRef> trail_;
  const std::function<bool(const std::vector<std::vector<int>>&)>* visit_ = nullptr;
};

}  // namespace

void for_each_var_morphism(const ComputadPtr& c, const ComputadPtr& d, bool injective,
                           const std::function<bool(const std::vector<std::vector<int>>&)>& visit) {
  if (!same_signature(c->signature(), d->signature())) fail(ErrorKind::BaseMismatch, "computads over different signatures");
  VarSearch(*c, *d, injective).run(visit);
}

long count_var_morphisms(const ComputadPtr& c, const ComputadPtr& d) {
  long n = 0;
  for_each_var_morphism(c, d, false, [&](const auto&) {
    ++n;
    return true;
  });
  return n;
}

std::optional<ComputadMorphism> find_isomorphism(const ComputadPtr& c, const ComputadPtr& d) {
  if (!same_signature(c->signature(), d->signature())) return std::nullopt;
  for (SortId s = 0; s < c->base().num_sorts(); ++s)
    if (c->num_generators(s) != d->num_generators(s)) return std::nullopt;
  std::optional<ComputadMorphism> out;
  for_each_var_morphism(c, d, true, [&](const std::vector<std::vector<int>>& m) {
    out = var_morphism(c, d, m);
    return false;
  });
  return out;
}

bool isomorphic(const ComputadPtr& c, const ComputadPtr& d) { return find_isomorphism(c, d).has_value(); }

void for_each_morphism(const ComputadPtr& c, const ComputadPtr& d, int depth,
                       const std::function<bool(const ComputadMorphism&)>& visit) {
  if (!same_signature(c->signature(), d->signature())) fail(ErrorKind::BaseMismatch, "computads over different signatures");
  const auto& cat = c->base();
  // candidate terms of each sort bucketed by their boundary family
  std::vector<std::map<std::vector<Term>, std::vector<Term>>> buckets(cat.num_sorts());
  TermEnumerator terms(d);
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    if (c->num_generators(s) == 0) continue;
    for (const Term& t : terms.up_to(s, depth)) {
      std::vector<Term> fam;
      for (ArrowId e : cat.into(s)) fam.push_back(boundary(*d, e, t));
      buckets[s][fam].push_back(t);
    }
  }
  std::vector<GenRef> order;
  for (SortId s = 0; s < cat.num_sorts(); ++s)
    for (int g = 0; g < c->num_generators(s); ++g) order.push_back({s, g});
  std::stable_sort(order.begin(), order.end(),
                   [&](const GenRef& a, const GenRef& b) { return cat.dim(a.sort) < cat.dim(b.sort); });
  ComputadMorphism m{c, d, std::vector<std::vector<Term>>(cat.num_sorts())};
  for (SortId s = 0; s < cat.num_sorts(); ++s) m.assign[s].resize(c->num_generators(s));
  std::function<bool(std::size_t)> step = [&](std::size_t k) {
    if (k == order.size()) return visit(m);
    auto [s, g] = order[k];
    std::vector<Term> fam;
    for (const Term& t : c->gluing_family(s, g)) fam.push_back(apply(m, t));
    auto it = buckets[s].find(fam);
    if (it == buckets[s].end()) return true;
    for (const Term& t : it->second) {
      m.assign[s][g] = t;
      if (!step(k + 1)) return false;
    }
    m.assign[s][g] = Term();
    return true;
  };
  step(0);
}

std::vector<ComputadMorphism> enumerate_morphisms(const ComputadPtr& c, const ComputadPtr& d, int depth) {
  std::vector<ComputadMorphism> out;
  for_each_morphism(c, d, depth, [&](const ComputadMorphism& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

}  // namespace cptd
