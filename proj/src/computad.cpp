#include "computads/computad.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace cptd {

namespace {

bool same_signature(const Signature& a, const Signature& b) {
  if (&a == &b) return true;
  if (a.num_symbols() != b.num_symbols() || !a.base().equals(b.base())) return false;
  for (int f = 0; f < a.num_symbols(); ++f)
    if (a.symbol(f).id != b.symbol(f).id || a.symbol(f).sort != b.symbol(f).sort) return false;
  return true;
}

bool same_computad(const Computad& a, const Computad& b) {
  if (&a == &b) return true;
  if (!same_signature(a.signature(), b.signature())) return false;
  for (SortId s = 0; s < a.base().num_sorts(); ++s)
    if (a.generators(s) != b.generators(s)) return false;
  return a.gluing_table() == b.gluing_table();
}

}  // namespace

namespace detail {

void complete_face_family(const Computad& ctx, SortId s, std::vector<Term>& family, ErrorKind kind,
                          const std::string& what) {
  const auto& cat = ctx.base();
  auto faces = cat.into(s);
  std::vector<int> order(faces.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return cat.dim(cat.arrow(faces[x]).src) > cat.dim(cat.arrow(faces[y]).src);
  });
  for (int p : order) {
    if (family[p].valid()) continue;
    const ArrowId e = faces[p];
    const SortId k = cat.arrow(e).src;
    for (std::size_t q = 0; q < faces.size() && !family[p].valid(); ++q) {
      if (!family[q].valid()) continue;
      for (ArrowId d2 : cat.hom(k, cat.arrow(faces[q]).src)) {
        if (cat.arrow(d2).identity || cat.compose(faces[q], d2) != e) continue;
        family[p] = boundary(ctx, d2, family[q]);
        break;
      }
    }
    if (!family[p].valid()) fail(kind, what + ": nothing given or derivable on face " + cat.arrow(e).id);
  }
}

void check_face_family(const Computad& ctx, SortId s, const std::vector<Term>& family, const std::string& what) {
  const auto& cat = ctx.base();
  for (ArrowId d : cat.into(s)) {
    const Term& td = family[cat.face_position(d)];
    for (ArrowId d2 : cat.into(cat.arrow(d).src)) {
      ArrowId dd = cat.compose(d, d2);
      if (!(boundary(ctx, d2, td) == family[cat.face_position(dd)]))
        fail(ErrorKind::CocycleFailure, what + ": restricting the term on face " + cat.arrow(d).id + " along " +
                                            cat.arrow(d2).id + " does not give the term on face " +
                                            cat.arrow(dd).id +
                                            " (checked as (d')^*(t_d) = t_{d o d'}; the reading "
                                            "(d')^*(t_{d'}) = t_{d d'} is ill-typed)");
    }
  }
}

}  // namespace detail

int Computad::total_generators() const {
  int n = 0;
  for (const auto& g : gens_) n += static_cast<int>(g.size());
  return n;
}

void Computad::index() {
  index_.clear();
  for (std::size_t s = 0; s < gens_.size(); ++s)
    for (std::size_t g = 0; g < gens_[s].size(); ++g)
      if (!index_.emplace(gens_[s][g], GenRef{static_cast<SortId>(s), static_cast<int>(g)}).second)
        fail(ErrorKind::UnknownGenerator, "duplicate generator " + gens_[s][g]);
}

std::optional<GenRef> Computad::find_generator(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GenRef Computad::generator(const std::string& name) const {
  auto r = find_generator(name);
  if (!r) fail(ErrorKind::UnknownGenerator, "unknown generator " + name);
  return *r;
}

const Term& Computad::gluing(SortId s, int g, ArrowId face) const {
  return gluing_.at(s).at(g).at(base().face_position(face));
}

ComputadPtr Computad::empty(SignaturePtr sig) {
  std::shared_ptr<Computad> c(new Computad());
  const int n = sig->base().num_sorts();
  c->sig_ = std::move(sig);
  c->gens_.assign(n, {});
  c->gluing_.assign(n, {});
  c->index();
  return c;
}

ComputadPtr Computad::free(const Presheaf& x, SignaturePtr sig) {
  const auto& cat = sig->base();
  if (!bases_compatible(x.base(), cat)) fail(ErrorKind::BaseMismatch, "presheaf and signature bases differ");
  Presheaf y = x.base().equals(cat) ? x : x.rebase(sig->base_ptr());
  std::shared_ptr<Computad> c(new Computad());
  c->sig_ = std::move(sig);
  c->gens_.assign(cat.num_sorts(), {});
  c->gluing_.assign(cat.num_sorts(), {});
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    c->gens_[s] = y.cells(s);
    for (int g = 0; g < y.num_cells(s); ++g) {
      std::vector<Term> fam;
      for (ArrowId d : cat.into(s)) fam.push_back(Term::var(cat.arrow(d).src, y.act(d, g)));
      c->gluing_[s].push_back(std::move(fam));
    }
  }
  c->index();
  return c;
}

ComputadPtr Computad::from_terms(SignaturePtr sig, std::vector<std::vector<std::string>> gens,
                                 std::vector<std::vector<std::vector<Term>>> gluing) {
  const auto& cat = sig->base();
  if (static_cast<int>(gens.size()) > cat.num_sorts()) fail(ErrorKind::UnknownSort, "too many generator sorts");
  gens.resize(cat.num_sorts());
  gluing.resize(cat.num_sorts());
  std::vector<std::vector<int>> rename(cat.num_sorts());
  std::vector<std::vector<int>> order(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    order[s].resize(gens[s].size());
    std::iota(order[s].begin(), order[s].end(), 0);
    std::sort(order[s].begin(), order[s].end(), [&](int a, int b) { return gens[s][a] < gens[s][b]; });
    rename[s].resize(gens[s].size());
    for (std::size_t k = 0; k < order[s].size(); ++k) rename[s][order[s][k]] = static_cast<int>(k);
    gluing[s].resize(gens[s].size());
  }
  std::shared_ptr<Computad> c(new Computad());
  c->sig_ = std::move(sig);
  c->gens_.assign(cat.num_sorts(), {});
  c->gluing_.assign(cat.num_sorts(), {});
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    for (int old : order[s]) {
      c->gens_[s].push_back(gens[s][old]);
      auto fam = std::move(gluing[s][old]);
      fam.resize(cat.into(s).size());
      for (auto& t : fam)
        if (t.valid()) t = rename_vars(t, rename);
      c->gluing_[s].push_back(std::move(fam));
    }
  }
  c->index();
  // Validate dimension by dimension; lower generators are already checked
  // whenever a higher gluing term is inspected.
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    for (int g = 0; g < c->num_generators(s); ++g) {
      auto& fam = c->gluing_[s][g];
      const std::string what = "generator " + c->gens_[s][g];
      for (std::size_t p = 0; p < fam.size(); ++p) {
        if (!fam[p].valid()) continue;
        const ArrowId d = cat.into(s)[p];
        try {
          check_term(*c, fam[p]);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::UnknownSymbol) throw;
          fail(ErrorKind::GluingIllTyped, what + ", face " + cat.arrow(d).id + ": " + e.what());
        }
        if (fam[p].sort() != cat.arrow(d).src)
          fail(ErrorKind::GluingIllTyped, what + ": gluing on face " + cat.arrow(d).id + " has sort " +
                                              cat.sort(fam[p].sort()).id + ", expected " +
                                              cat.sort(cat.arrow(d).src).id);
      }
      detail::complete_face_family(*c, s, fam, ErrorKind::GluingIllTyped, what);
      detail::check_face_family(*c, s, fam, what);
    }
  }
  return c;
}

ComputadPtr Computad::create(SignaturePtr sig, const std::vector<std::pair<std::string, std::vector<std::string>>>& gens,
                             const std::vector<GluingDecl>& gluing) {
  const auto& cat = sig->base();
  std::vector<std::vector<std::string>> names(cat.num_sorts());
  for (const auto& [sort, list] : gens) {
    SortId s = cat.sort_index(sort);
    names[s].insert(names[s].end(), list.begin(), list.end());
  }
  for (auto& n : names) std::sort(n.begin(), n.end());
  // Resolve gluing one dimension at a time against the computad built so far.
  ComputadPtr current = empty(sig);
  std::vector<std::vector<std::vector<Term>>> table(cat.num_sorts());
  int s = 0;
  while (s < cat.num_sorts()) {
    const int dim = cat.dim(s);
    int e = s;
    while (e < cat.num_sorts() && cat.dim(e) == dim) ++e;
    for (SortId t = s; t < e; ++t) table[t].assign(names[t].size(), std::vector<Term>(cat.into(t).size()));
    std::vector<std::vector<std::string>> layer_names(names.begin(), names.begin() + e);
    for (const auto& d : gluing) {
      SortId gs = -1;
      int gi = -1;
      for (SortId t = s; t < e; ++t) {
        auto it = std::lower_bound(names[t].begin(), names[t].end(), d.gen);
        if (it != names[t].end() && *it == d.gen) {
          gs = t;
          gi = static_cast<int>(it - names[t].begin());
        }
      }
      if (gs < 0) continue;
      ArrowId face = cat.arrow_index(d.face);
      if (cat.arrow(face).identity || cat.arrow(face).dst != gs)
        fail(ErrorKind::GluingIllTyped, "generator " + d.gen + ": " + d.face + " is not a face into its sort");
      Term t;
      try {
        t = resolve_term(*current, d.term);
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::UnknownSymbol) throw;
        fail(ErrorKind::GluingIllTyped, "generator " + d.gen + ", face " + d.face + ": " + err.what());
      }
      auto& slot = table[gs][gi][cat.face_position(face)];
      if (slot.valid() && !(slot == t))
        fail(ErrorKind::GluingIllTyped, "generator " + d.gen + " has two gluings on face " + d.face);
      slot = t;
    }
    std::vector<std::vector<std::vector<Term>>> partial(table.begin(), table.begin() + e);
    current = from_terms(sig, layer_names, partial);
    s = e;
  }
  for (const auto& d : gluing)
    if (!current->find_generator(d.gen)) fail(ErrorKind::UnknownGenerator, "gluing for unknown generator " + d.gen);
  return current;
}

ComputadPtr Computad::drop_above(int n) const {
  std::shared_ptr<Computad> c(new Computad(*this));
  for (SortId s = 0; s < base().num_sorts(); ++s) {
    if (base().dim(s) <= n) continue;
    c->gens_[s].clear();
    c->gluing_[s].clear();
  }
  c->index();
  return c;
}

Term boundary(const Computad& c, ArrowId face, const Term& t) {
  const auto& cat = c.base();
  const Arrow& a = cat.arrow(face);
  if (a.dst != t.sort())
    fail(ErrorKind::SortMismatch, "face " + a.id + " does not land in sort " + cat.sort(t.sort()).id);
  if (a.identity) return t;
  if (t.is_var()) return c.gluing(t.sort(), t.generator(), face);
  const FunctionSymbol& f = c.signature().symbol(t.symbol());
  const Term& bt = f.boundary.at(cat.face_position(face));
  return substitute(bt, [&](SortId s, int cell) { return t.arg(f.arity.flat(s, cell)); });
}

namespace {

void check_args(const Computad& c, const FunctionSymbol& f, const std::vector<Term>& args) {
  const auto& cat = c.base();
  if (static_cast<int>(args.size()) != f.arity.total_cells())
    fail(ErrorKind::IncompatibleArgs, "symbol " + f.id + " expects " + std::to_string(f.arity.total_cells()) +
                                          " arguments, got " + std::to_string(args.size()));
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    for (int b = 0; b < f.arity.num_cells(s); ++b) {
      const Term& a = args[f.arity.flat(s, b)];
      if (!a.valid()) fail(ErrorKind::IncompatibleArgs, "symbol " + f.id + ": no argument for cell " +
                                                            f.arity.cell_name(s, b));
      if (a.sort() != s)
        fail(ErrorKind::SortMismatch, "symbol " + f.id + ": argument for cell " + f.arity.cell_name(s, b) +
                                          " has sort " + cat.sort(a.sort()).id);
    }
  }
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    for (int b = 0; b < f.arity.num_cells(s); ++b) {
      const Term& a = args[f.arity.flat(s, b)];
      for (ArrowId d : cat.into(s)) {
        const SortId j = cat.arrow(d).src;
        const int db = f.arity.act(d, b);
        if (!(boundary(c, d, a) == args[f.arity.flat(j, db)]))
          fail(ErrorKind::IncompatibleArgs, "symbol " + f.id + ": restricting the argument at " +
                                                f.arity.cell_name(s, b) + " along " + cat.arrow(d).id +
                                                " does not give the argument at " + f.arity.cell_name(j, db));
      }
    }
  }
}

}  // namespace

void check_term(const Computad& c, const Term& t) {
  std::unordered_set<const void*> seen;
  std::function<void(const Term&)> go = [&](const Term& s) {
    if (!s.valid()) fail(ErrorKind::SortMismatch, "missing term");
    if (s.sort() < 0 || s.sort() >= c.base().num_sorts()) fail(ErrorKind::UnknownSort, "term of unknown sort");
    if (s.is_var()) {
      if (s.generator() < 0 || s.generator() >= c.num_generators(s.sort()))
        fail(ErrorKind::UnknownGenerator, "variable outside the computad");
      return;
    }
    if (!seen.insert(s.identity()).second) return;
    if (s.symbol() < 0 || s.symbol() >= c.signature().num_symbols())
      fail(ErrorKind::UnknownSymbol, "symbol outside the signature");
    const auto& f = c.signature().symbol(s.symbol());
    if (f.sort != s.sort()) fail(ErrorKind::SortMismatch, "application of " + f.id + " has the wrong sort");
    for (const auto& a : s.args()) go(a);
    check_args(c, f, std::vector<Term>(s.args().begin(), s.args().end()));
  };
  go(t);
}

Term mk_var(const Computad& c, const std::string& gen) {
  auto r = c.generator(gen);
  return Term::var(r.sort, r.index);
}

Term mk_app(const Computad& c, int symbol, std::vector<Term> args) {
  const auto& f = c.signature().symbol(symbol);
  check_args(c, f, args);
  return Term::app(f.sort, symbol, std::move(args));
}

Term resolve_term(const Computad& c, const RawTerm& raw) {
  if (raw.is_var()) return mk_var(c, raw.var);
  const int sym = c.signature().symbol_index(raw.symbol);
  const auto& f = c.signature().symbol(sym);
  const auto& cat = c.base();
  std::vector<Term> args(f.arity.total_cells());
  for (const auto& a : raw.args) {
    auto cell = f.arity.find_cell(a.cell);
    if (!cell) fail(ErrorKind::UnknownCell, "symbol " + f.id + " has no arity cell " + a.cell);
    Term& slot = args[f.arity.flat(*cell)];
    if (slot.valid()) fail(ErrorKind::IncompatibleArgs, "symbol " + f.id + ": cell " + a.cell + " given twice");
    slot = resolve_term(c, a.term);
  }
  // Fill omitted cells from the boundaries of given higher cells.
  for (SortId s = cat.num_sorts() - 1; s >= 0; --s) {
    for (int b = 0; b < f.arity.num_cells(s); ++b) {
      const Term& t = args[f.arity.flat(s, b)];
      if (!t.valid()) continue;
      if (t.sort() != s) continue;
      for (ArrowId d : cat.into(s)) {
        Term& low = args[f.arity.flat(cat.arrow(d).src, f.arity.act(d, b))];
        if (!low.valid()) low = boundary(c, d, t);
      }
    }
  }
  return mk_app(c, sym, std::move(args));
}

RawTerm to_raw(const Computad& c, const Term& t) {
  if (t.is_var()) return RawTerm::make_var(c.generator_name(t.sort(), t.generator()));
  const auto& f = c.signature().symbol(t.symbol());
  std::vector<RawArg> args;
  for (int k = 0; k < f.arity.total_cells(); ++k) {
    CellRef r = f.arity.unflat(k);
    args.push_back({f.arity.cell_name(r.sort, r.index), to_raw(c, t.arg(k))});
  }
  return RawTerm::make_app(f.id, std::move(args));
}

std::string render(const Computad& c, const Term& t) {
  if (t.is_var()) {
    const std::string& name = c.generator_name(t.sort(), t.generator());
    if (name.find_first_of("[]=,{}") == std::string::npos) return name;
    return "{" + name + "}";
  }
  const auto& f = c.signature().symbol(t.symbol());
  const auto& cat = c.base();
  // Only cells that are not faces of other cells are shown; the rest follow.
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
    out += f.arity.cell_name(r.sort, r.index) + "=" + render(c, t.arg(k));
  }
  return out + "]";
}

void check_morphism(const ComputadMorphism& m) {
  if (!m.src || !m.dst) fail(ErrorKind::EndpointMismatch, "morphism without endpoints");
  const Computad& src = *m.src;
  const Computad& dst = *m.dst;
  if (!same_signature(src.signature(), dst.signature()))
    fail(ErrorKind::BaseMismatch, "morphism endpoints use different signatures");
  const auto& cat = src.base();
  if (static_cast<int>(m.assign.size()) != cat.num_sorts())
    fail(ErrorKind::UnknownGenerator, "morphism does not cover every sort");
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    if (static_cast<int>(m.assign[s].size()) != src.num_generators(s))
      fail(ErrorKind::UnknownGenerator, "morphism does not assign every generator of sort " + cat.sort(s).id);
    for (int g = 0; g < src.num_generators(s); ++g) {
      const Term& img = m.assign[s][g];
      if (!img.valid()) fail(ErrorKind::UnknownGenerator, "generator " + src.generator_name(s, g) + " unassigned");
      check_term(dst, img);
      if (img.sort() != s)
        fail(ErrorKind::SortMismatch, "generator " + src.generator_name(s, g) + " sent to a term of sort " +
                                          cat.sort(img.sort()).id);
      for (ArrowId d : cat.into(s)) {
        if (!(boundary(dst, d, img) == apply(m, src.gluing(s, g, d))))
          fail(ErrorKind::BoundaryConditionFailure, "image of " + src.generator_name(s, g) +
                                                        " has the wrong boundary on face " + cat.arrow(d).id);
      }
    }
  }
}

ComputadMorphism make_morphism(ComputadPtr src, ComputadPtr dst, std::vector<std::vector<Term>> assign) {
  ComputadMorphism m{std::move(src), std::move(dst), std::move(assign)};
  check_morphism(m);
  return m;
}

ComputadMorphism make_morphism(ComputadPtr src, ComputadPtr dst,
                               const std::vector<std::pair<std::string, RawTerm>>& assign) {
  std::vector<std::vector<Term>> table(src->base().num_sorts());
  for (SortId s = 0; s < src->base().num_sorts(); ++s) table[s].resize(src->num_generators(s));
  for (const auto& [gen, raw] : assign) {
    GenRef r = src->generator(gen);
    if (table[r.sort][r.index].valid()) fail(ErrorKind::UnknownGenerator, "generator " + gen + " assigned twice");
    table[r.sort][r.index] = resolve_term(*dst, raw);
  }
  return make_morphism(std::move(src), std::move(dst), std::move(table));
}

ComputadMorphism identity_morphism(const ComputadPtr& c) {
  ComputadMorphism m{c, c, {}};
  m.assign.resize(c->base().num_sorts());
  for (SortId s = 0; s < c->base().num_sorts(); ++s)
    for (int g = 0; g < c->num_generators(s); ++g) m.assign[s].push_back(Term::var(s, g));
  return m;
}

Term apply(const ComputadMorphism& m, const Term& t) {
  return substitute(t, [&](SortId s, int g) -> Term { return m.assign.at(s).at(g); });
}

ComputadMorphism compose(const ComputadMorphism& tau, const ComputadMorphism& sigma) {
  if (!sigma.dst || !tau.src || !same_computad(*sigma.dst, *tau.src))
    fail(ErrorKind::EndpointMismatch, "morphisms are not composable");
  ComputadMorphism m{sigma.src, tau.dst, sigma.assign};
  for (auto& row : m.assign)
    for (auto& t : row) t = apply(tau, t);
  return m;
}

bool operator==(const ComputadMorphism& a, const ComputadMorphism& b) { return a.assign == b.assign; }

bool is_var_to_var(const ComputadMorphism& m) {
  for (const auto& row : m.assign)
    for (const auto& t : row)
      if (!t.is_var()) return false;
  return true;
}

std::vector<std::vector<int>> var_map(const ComputadMorphism& m) {
  std::vector<std::vector<int>> out(m.assign.size());
  for (std::size_t s = 0; s < m.assign.size(); ++s)
    for (const auto& t : m.assign[s]) {
      if (!t.is_var()) fail(ErrorKind::NotVarToVar, "morphism sends a generator to a composite term");
      out[s].push_back(t.generator());
    }
  return out;
}

ComputadMorphism var_morphism(ComputadPtr src, ComputadPtr dst, const std::vector<std::vector<int>>& map) {
  std::vector<std::vector<Term>> assign(src->base().num_sorts());
  for (SortId s = 0; s < src->base().num_sorts(); ++s)
    for (int g = 0; g < src->num_generators(s); ++g) assign[s].push_back(Term::var(s, map.at(s).at(g)));
  return ComputadMorphism{std::move(src), std::move(dst), std::move(assign)};
}

bool is_injective_var(const ComputadMorphism& m) {
  if (!is_var_to_var(m)) return false;
  auto map = var_map(m);
  for (auto& row : map) {
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end()) return false;
  }
  return true;
}

ComputadPtr truncate_computad(const ComputadPtr& c, int n) {
  auto sig = c->signature().restrict(n);
  const int ns = sig->base().num_sorts();
  std::vector<std::vector<std::string>> gens(c->gluing_table().size());
  for (SortId s = 0; s < ns; ++s) gens[s] = c->generators(s);
  gens.resize(ns);
  auto gl = c->gluing_table();
  gl.resize(ns);
  return Computad::from_terms(sig, std::move(gens), std::move(gl));
}

ComputadPtr skeleton_computad(const ComputadPtr& c, const SignaturePtr& sig) {
  if (!c->base().is_truncation_of(sig->base()))
    fail(ErrorKind::BaseMismatch, "skeleton target signature does not extend the computad's signature");
  std::vector<std::vector<std::string>> gens;
  for (SortId s = 0; s < c->base().num_sorts(); ++s) gens.push_back(c->generators(s));
  return Computad::from_terms(sig, std::move(gens), c->gluing_table());
}

ComputadMorphism skeleton_counit(const ComputadPtr& c, int n) {
  auto low = c->drop_above(n);
  std::vector<std::vector<int>> map(c->base().num_sorts());
  for (SortId s = 0; s < c->base().num_sorts(); ++s) {
    map[s].resize(low->num_generators(s));
    std::iota(map[s].begin(), map[s].end(), 0);
  }
  return var_morphism(low, c, map);
}

}  // namespace cptd
