#include "computads/plex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "computads/detail/families.hpp"
#include "computads/error.hpp"

namespace cptd {

Polyplex Polyplex::var(SortId sort, std::vector<Polyplex> family) {
  Polyplex p;
  p.sort_ = sort;
  for (const auto& q : family) p.depth_ = std::max(p.depth_, q.depth_);
  p.children_ = std::move(family);
  return p;
}

Polyplex Polyplex::app(SortId sort, int symbol, std::vector<Polyplex> args) {
  Polyplex p;
  p.sort_ = sort;
  p.symbol_ = symbol;
  int d = 0;
  for (const auto& q : args) d = std::max(d, q.depth_);
  p.depth_ = d + 1;
  p.children_ = std::move(args);
  return p;
}

std::strong_ordering operator<=>(const Polyplex& a, const Polyplex& b) {
  if (auto c = a.sort_ <=> b.sort_; c != 0) return c;
  if (auto c = a.symbol_ <=> b.symbol_; c != 0) return c;
  if (auto c = a.children_.size() <=> b.children_.size(); c != 0) return c;
  for (std::size_t k = 0; k < a.children_.size(); ++k)
    if (auto c = a.children_[k] <=> b.children_[k]; c != 0) return c;
  return std::strong_ordering::equal;
}

Polyplex classify(const Computad& c, const Term& t) {
  if (t.is_var()) {
    std::vector<Polyplex> fam;
    for (const Term& g : c.gluing_family(t.sort(), t.generator())) fam.push_back(classify(c, g));
    return Polyplex::var(t.sort(), std::move(fam));
  }
  std::vector<Polyplex> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(classify(c, a));
  return Polyplex::app(t.sort(), t.symbol(), std::move(args));
}

namespace {

Polyplex substitute(const Term& t, const std::vector<Polyplex>& args, const Presheaf& arity) {
  if (t.is_var()) return args.at(arity.flat(t.sort(), t.generator()));
  std::vector<Polyplex> out;
  for (const Term& a : t.args()) out.push_back(substitute(a, args, arity));
  return Polyplex::app(t.sort(), t.symbol(), std::move(out));
}

}  // namespace

Polyplex boundary(const Signature& sig, ArrowId face, const Polyplex& p) {
  const auto& cat = sig.base();
  const Arrow& a = cat.arrow(face);
  if (a.dst != p.sort()) fail(ErrorKind::UnknownFace, "face " + a.id + " does not end at the sort of the polyplex");
  if (a.identity) return p;
  if (p.is_var()) return p.children().at(cat.face_position(face));
  const auto& f = sig.symbol(p.symbol());
  return substitute(f.boundary.at(cat.face_position(face)), p.children(), f.arity);
}

void check_polyplex(const Signature& sig, const Polyplex& p) {
  const auto& cat = sig.base();
  if (!p.valid()) fail(ErrorKind::UnknownSort, "empty polyplex");
  for (const auto& q : p.children()) check_polyplex(sig, q);
  if (p.is_var()) {
    const auto into = cat.into(p.sort());
    if (p.children().size() != into.size()) fail(ErrorKind::CocycleFailure, "boundary family has the wrong length");
    for (ArrowId d : into) {
      const auto& q = p.children()[cat.face_position(d)];
      if (q.sort() != cat.arrow(d).src) fail(ErrorKind::SortMismatch, "boundary member of the wrong sort");
      for (ArrowId e : cat.into(q.sort()))
        if (!(boundary(sig, e, q) == p.children()[cat.face_position(cat.compose(d, e))]))
          fail(ErrorKind::CocycleFailure, "boundary family fails the cocycle condition at " + cat.arrow(d).id);
    }
    return;
  }
  if (p.symbol() < 0 || p.symbol() >= sig.num_symbols()) fail(ErrorKind::UnknownSymbol, "symbol index out of range");
  const auto& f = sig.symbol(p.symbol());
  if (f.sort != p.sort()) fail(ErrorKind::SortMismatch, "application of " + f.id + " at the wrong sort");
  if (static_cast<int>(p.children().size()) != f.arity.total_cells())
    fail(ErrorKind::IncompatibleArgs, "wrong number of arguments for " + f.id);
  for (int k = 0; k < f.arity.total_cells(); ++k) {
    CellRef r = f.arity.unflat(k);
    const auto& q = p.children()[k];
    if (q.sort() != r.sort) fail(ErrorKind::SortMismatch, "argument of the wrong sort for " + f.id);
    for (ArrowId e : cat.into(r.sort))
      if (!(boundary(sig, e, q) == p.children()[f.arity.flat(cat.arrow(e).src, f.arity.act(e, r.index))]))
        fail(ErrorKind::IncompatibleArgs, "arguments of " + f.id + " do not fit together");
  }
}

std::string render(const Signature& sig, const Polyplex& p) {
  const auto& cat = sig.base();
  if (p.is_var()) {
    if (p.children().empty()) return "*";
    auto gen = cat.generating_faces(p.sort());
    std::string out = "*(";
    bool first = true;
    for (ArrowId d : cat.into(p.sort())) {
      if (!gen[cat.face_position(d)]) continue;
      if (!first) out += ",";
      first = false;
      out += cat.arrow(d).id + "=" + render(sig, p.children()[cat.face_position(d)]);
    }
    return out + ")";
  }
  const auto& f = sig.symbol(p.symbol());
  std::vector<bool> shown(f.arity.total_cells(), true);
  for (SortId s = 0; s < cat.num_sorts(); ++s)
    for (int b = 0; b < f.arity.num_cells(s); ++b)
      for (ArrowId d : cat.into(s)) shown[f.arity.flat(cat.arrow(d).src, f.arity.act(d, b))] = false;
  std::string out = f.id + "[";
  bool first = true;
  for (int k = 0; k < f.arity.total_cells(); ++k) {
    if (!shown[k]) continue;
    CellRef r = f.arity.unflat(k);
    if (!first) out += ",";
    first = false;
    out += f.arity.cell_name(r.sort, r.index) + "=" + render(sig, p.children()[k]);
  }
  return out + "]";
}

std::vector<Polyplex> enumerate_polyplexes(const SignaturePtr& sig, SortId s, int max_depth) {
  const auto& cat = sig->base();
  if (s < 0 || s >= cat.num_sorts()) fail(ErrorKind::UnknownSort, "sort index out of range");
  if (max_depth < 0) return {};
  // levels[d][j]: polyplexes of sort j and depth <= d
  std::vector<std::vector<std::vector<Polyplex>>> levels;
  for (int d = 0; d <= max_depth; ++d) {
    std::vector<std::vector<Polyplex>> level(cat.num_sorts());
    for (SortId j = 0; j < cat.num_sorts(); ++j) {
      std::set<Polyplex> out;
      Presheaf bd = boundary_representable(sig->base_ptr(), j);
      const auto into = cat.into(j);
      detail::search_families<Polyplex>(
          bd, d, [&](ArrowId e, const Polyplex& q) { return boundary(*sig, e, q); },
          [](const Polyplex& q) { return q.depth(); },
          [&](SortId k) -> const std::vector<Polyplex>& { return level[k]; },
          [&](const std::vector<Polyplex>& values) {
            std::vector<Polyplex> fam(into.size());
            for (ArrowId e : into) fam[cat.face_position(e)] = values[bd.flat(bd.cell(cat.arrow(e).id))];
            out.insert(Polyplex::var(j, std::move(fam)));
            return true;
          });
      if (d > 0) {
        auto [lo, hi] = sig->symbols_of(j);
        for (int f = lo; f < hi; ++f)
          detail::search_families<Polyplex>(
              sig->symbol(f).arity, d - 1, [&](ArrowId e, const Polyplex& q) { return boundary(*sig, e, q); },
              [](const Polyplex& q) { return q.depth(); },
              [&](SortId k) -> const std::vector<Polyplex>& { return levels[d - 1][k]; },
              [&](const std::vector<Polyplex>& args) {
                out.insert(Polyplex::app(j, f, args));
                return true;
              });
      }
      level[j].assign(out.begin(), out.end());
    }
    levels.push_back(std::move(level));
  }
  std::vector<std::pair<std::string, Polyplex>> keyed;
  for (const auto& p : levels[max_depth][s]) keyed.push_back({render(*sig, p), p});
  std::sort(keyed.begin(), keyed.end());
  std::vector<Polyplex> out;
  for (auto& [k, p] : keyed) out.push_back(std::move(p));
  return out;
}

namespace {

// Extends a generator map rep -> c so that `from` is sent to `to`, closing
// under gluings.
class Matcher {
 public:
  Matcher(const Computad& rep, const Computad& c) : rep_(rep), c_(c), map_(rep.base().num_sorts()) {
    for (SortId s = 0; s < rep.base().num_sorts(); ++s) map_[s].assign(rep.num_generators(s), -1);
  }

  bool match(const Term& from, const Term& to) {
    if (!unify(from, to)) return false;
    while (!pending_.empty()) {
      GenRef g = pending_.front();
      pending_.pop_front();
      const auto& fa = rep_.gluing_family(g.sort, g.index);
      const auto& fb = c_.gluing_family(g.sort, map_[g.sort][g.index]);
      for (std::size_t k = 0; k < fa.size(); ++k)
        if (!unify(fa[k], fb[k])) return false;
    }
    return true;
  }

  bool complete() const {
    for (const auto& row : map_)
      for (int w : row)
        if (w < 0) return false;
    return true;
  }
  const std::vector<std::vector<int>>& map() const { return map_; }

 private:
  bool unify(const Term& a, const Term& b) {
    if (a.is_var()) {
      if (!b.is_var() || b.sort() != a.sort()) return false;
      int& slot = map_[a.sort()][a.generator()];
      if (slot >= 0) return slot == b.generator();
      slot = b.generator();
      pending_.push_back({a.sort(), a.generator()});
      return true;
    }
    if (b.is_var() || a.symbol() != b.symbol() || a.args().size() != b.args().size()) return false;
    for (std::size_t k = 0; k < a.args().size(); ++k)
      if (!unify(a.args()[k], b.args()[k])) return false;
    return true;
  }

  const Computad& rep_;
  const Computad& c_;
  std::vector<std::vector<int>> map_;
  std::deque<GenRef> pending_;
};

// Renames generators canonically: in order of first appearance from the
// universal term, breadth first through gluings.
Representation canonical(const ComputadPtr& c, const Term& universal, bool top) {
  const auto& cat = c->base();
  std::vector<std::vector<std::string>> names(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s) names[s].assign(c->num_generators(s), "");
  int counter = 0;
  std::deque<Term> queue{universal};
  auto name_next = [&](GenRef g) {
    if (top && counter == 0 && universal.is_var()) {
      names[g.sort][g.index] = "*";
      ++counter;
      return;
    }
    names[g.sort][g.index] = "x" + std::to_string(counter - (top && universal.is_var() ? 1 : 0));
    ++counter;
  };
  while (!queue.empty()) {
    Term t = queue.front();
    queue.pop_front();
    if (t.is_var()) {
      if (!names[t.sort()][t.generator()].empty()) continue;
      name_next({t.sort(), t.generator()});
      for (const Term& g : c->gluing_family(t.sort(), t.generator())) queue.push_back(g);
    } else {
      for (const Term& a : t.args()) queue.push_back(a);
    }
  }
  for (SortId s = 0; s < cat.num_sorts(); ++s)
    for (int g = 0; g < c->num_generators(s); ++g)
      if (names[s][g].empty()) name_next({s, g});
  auto out = Computad::from_terms(c->signature_ptr(), names, c->gluing_table());
  std::vector<std::vector<int>> rename(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s)
    for (int g = 0; g < c->num_generators(s); ++g) rename[s].push_back(out->generator(names[s][g]).index);
  return {out, rename_vars(universal, rename)};
}

class Representer {
 public:
  explicit Representer(SignaturePtr sig) : sig_(std::move(sig)) {}

  const Representation& get(const Polyplex& p) {
    auto it = memo_.find(p);
    if (it != memo_.end()) return it->second;
    Representation r = build(p);
    return memo_.emplace(p, std::move(r)).first->second;
  }

 private:
  ComputadMorphism edge_map(const Representation& from, const Representation& to, const Term& target) {
    auto m = classifying_morphism(from.computad, from.universal, to.computad, target);
    if (!m) fail(ErrorKind::CocycleFailure, "boundary data of a polyplex do not fit together");
    return *m;
  }

  Representation build(const Polyplex& p) {
    const auto& cat = sig_->base();
    const auto& sig = *sig_;
    Diagram dg;
    std::vector<Representation> parts;
    for (const auto& q : p.children()) {
      parts.push_back(get(q));
      dg.nodes.push_back(parts.back().computad);
    }
    if (p.is_var()) {
      for (ArrowId d : cat.into(p.sort())) {
        const int k = cat.face_position(d);
        for (ArrowId e : cat.into(cat.arrow(d).src)) {
          const int src = cat.face_position(cat.compose(d, e));
          Term target = boundary(*parts[k].computad, e, parts[k].universal);
          dg.edges.push_back({src, k, edge_map(parts[src], parts[k], target)});
        }
      }
    } else {
      const auto& f = sig.symbol(p.symbol());
      for (int k = 0; k < f.arity.total_cells(); ++k) {
        CellRef r = f.arity.unflat(k);
        for (ArrowId e : cat.into(r.sort)) {
          const int src = f.arity.flat(cat.arrow(e).src, f.arity.act(e, r.index));
          Term target = boundary(*parts[k].computad, e, parts[k].universal);
          dg.edges.push_back({src, k, edge_map(parts[src], parts[k], target)});
        }
      }
    }
    ComputadPtr apex;
    std::vector<ComputadMorphism> cocone;
    if (dg.nodes.empty()) {
      apex = Computad::empty(sig_);
    } else {
      Colimit col = colimit_var(dg);
      apex = col.apex;
      cocone = std::move(col.cocone);
    }
    if (p.is_var()) {
      std::vector<std::vector<std::string>> names(cat.num_sorts());
      for (SortId s = 0; s < cat.num_sorts(); ++s) names[s] = apex->generators(s);
      auto gluing = apex->gluing_table();
      gluing.resize(cat.num_sorts());
      std::vector<Term> fam;
      for (std::size_t k = 0; k < parts.size(); ++k) fam.push_back(apply(cocone[k], parts[k].universal));
      const std::string top = "!top";
      names[p.sort()].push_back(top);
      gluing[p.sort()].push_back(std::move(fam));
      auto c = Computad::from_terms(sig_, names, std::move(gluing));
      GenRef g = c->generator(top);
      return canonical(c, Term::var(g.sort, g.index), true);
    }
    std::vector<Term> args;
    for (std::size_t k = 0; k < parts.size(); ++k) args.push_back(apply(cocone[k], parts[k].universal));
    return canonical(apex, mk_app(*apex, p.symbol(), std::move(args)), false);
  }

  SignaturePtr sig_;
  std::map<Polyplex, Representation> memo_;
};

}  // namespace

std::optional<ComputadMorphism> classifying_morphism(const ComputadPtr& rep, const Term& universal,
                                                     const ComputadPtr& c, const Term& t) {
  Matcher m(*rep, *c);
  if (!m.match(universal, t) || !m.complete()) return std::nullopt;
  return var_morphism(rep, c, m.map());
}

Representation polyplex_computad(const SignaturePtr& sig, const Polyplex& p) {
  check_polyplex(*sig, p);
  return Representer(sig).get(p);
}

Nerve nerve(const ComputadPtr& c, int max_depth) {
  const auto& cat = c->base();
  Nerve n;
  n.sig = c->signature_ptr();
  std::vector<std::vector<Polyplex>> cls(cat.num_sorts());
  int bound = 0;
  for (SortId s = 0; s < cat.num_sorts(); ++s)
    for (int g = 0; g < c->num_generators(s); ++g) {
      cls[s].push_back(classify(*c, Term::var(s, g)));
      bound = std::max(bound, cls[s].back().depth());
    }
  if (max_depth >= 0) bound = max_depth;
  std::map<Polyplex, int> index;
  Representer rep(n.sig);
  for (SortId s = 0; s < cat.num_sorts(); ++s)
    for (auto& p : enumerate_polyplexes(n.sig, s, bound)) {
      if (!p.is_var()) continue;
      index[p] = static_cast<int>(n.plexes.size());
      n.reps.push_back(rep.get(p));
      n.plexes.push_back(std::move(p));
    }
  n.fibres.resize(n.plexes.size());
  for (SortId s = 0; s < cat.num_sorts(); ++s)
    for (int g = 0; g < c->num_generators(s); ++g) {
      auto it = index.find(cls[s][g]);
      if (it == index.end()) continue;
      const int k = it->second;
      n.fibres[k].push_back(c->generator_name(s, g));
      auto m = classifying_morphism(n.reps[k].computad, n.reps[k].universal, c, Term::var(s, g));
      if (!m) fail(ErrorKind::CocycleFailure, "generator " + c->generator_name(s, g) + " is not classified by its plex");
      Nerve::Element e{k, c->generator_name(s, g), {}};
      const auto& src = *n.reps[k].computad;
      e.image.resize(cat.num_sorts());
      for (SortId j = 0; j < cat.num_sorts(); ++j)
        for (int x = 0; x < src.num_generators(j); ++x) {
          const Term& t = (*m)(j, x);
          e.image[j].push_back(c->generator_name(t.sort(), t.generator()));
        }
      n.elements.push_back(std::move(e));
    }
  return n;
}

ComputadPtr reconstruct_from_nerve(const Nerve& n) {
  if (n.elements.empty()) return Computad::empty(n.sig);
  const auto& cat = n.sig->base();
  std::map<std::string, int> element_of;
  for (std::size_t k = 0; k < n.elements.size(); ++k) element_of[n.elements[k].gen] = static_cast<int>(k);
  std::map<Polyplex, int> plex_index;
  for (std::size_t k = 0; k < n.plexes.size(); ++k) plex_index[n.plexes[k]] = static_cast<int>(k);

  Diagram dg;
  for (const auto& e : n.elements) dg.nodes.push_back(n.reps.at(e.plex).computad);
  for (std::size_t k = 0; k < n.elements.size(); ++k) {
    const auto& e = n.elements[k];
    const auto& r = n.reps[e.plex];
    for (SortId s = 0; s < cat.num_sorts(); ++s)
      for (int x = 0; x < r.computad->num_generators(s); ++x) {
        Term v = Term::var(s, x);
        if (v == r.universal) continue;
        auto q = plex_index.find(classify(*r.computad, v));
        if (q == plex_index.end()) fail(ErrorKind::UnknownCell, "nerve is missing a plex");
        auto from = element_of.find(e.image[s][x]);
        if (from == element_of.end()) fail(ErrorKind::UnknownGenerator, "nerve is missing the element " + e.image[s][x]);
        const auto& rq = n.reps[q->second];
        auto m = classifying_morphism(rq.computad, rq.universal, r.computad, v);
        if (!m) fail(ErrorKind::CocycleFailure, "plex map does not exist");
        dg.edges.push_back({from->second, static_cast<int>(k), *m});
      }
  }
  Colimit col = colimit_var(dg);
  // name each generator after the element whose top generator it is
  std::vector<std::vector<std::string>> names(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s) names[s] = col.apex->generators(s);
  for (std::size_t k = 0; k < n.elements.size(); ++k) {
    const Term& top = n.reps[n.elements[k].plex].universal;
    const Term& image = apply(col.cocone[k], top);
    names[image.sort()][image.generator()] = n.elements[k].gen;
  }
  return Computad::from_terms(n.sig, names, col.apex->gluing_table());
}

}  // namespace cptd
