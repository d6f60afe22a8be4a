#include "computads/cofibrant.hpp"

#include <algorithm>

#include "computads/colimit.hpp"
#include "computads/error.hpp"
#include "computads/term_monad.hpp"

namespace cptd {

ComputadMorphism boundary_inclusion(const SignaturePtr& sig, SortId s) {
  const auto& cat = sig->base();
  if (s < 0 || s >= cat.num_sorts()) fail(ErrorKind::UnknownSort, "sort index out of range");
  auto bd = boundary_computad(sig, s);
  auto rep = representable_computad(sig, s);
  std::vector<std::vector<int>> m(cat.num_sorts());
  for (SortId j = 0; j < cat.num_sorts(); ++j)
    for (const auto& name : bd->generators(j)) m[j].push_back(rep->generator(name).index);
  return var_morphism(bd, rep, m);
}

Attachment attach_cells(const ComputadPtr& base, const std::vector<CellAttachment>& cells) {
  const auto& sig = base->signature_ptr();
  const auto& cat = base->base();
  std::vector<std::vector<std::string>> names(cat.num_sorts());
  auto gluing = base->gluing_table();
  gluing.resize(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s) names[s] = base->generators(s);
  for (const auto& cell : cells) {
    const ComputadMorphism& phi = cell.phi;
    if (phi.dst.get() != base.get()) fail(ErrorKind::EndpointMismatch, "attaching map does not land in the base");
    auto bd = boundary_computad(sig, cell.sort);
    std::vector<Term> fam;
    for (ArrowId d : cat.into(cell.sort)) {
      auto g = phi.src->find_generator(cat.arrow(d).id);
      if (!g || bd->generators(g->sort) != phi.src->generators(g->sort))
        fail(ErrorKind::EndpointMismatch, "attaching map does not start at the boundary of " + cat.sort(cell.sort).id);
      fam.push_back(phi(g->sort, g->index));
    }
    names[cell.sort].push_back(cell.name);
    gluing[cell.sort].push_back(std::move(fam));
  }
  Attachment out;
  out.computad = Computad::from_terms(sig, names, std::move(gluing));
  std::vector<std::vector<int>> incl(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s)
    for (const auto& name : base->generators(s)) incl[s].push_back(out.computad->generator(name).index);
  out.inclusion = var_morphism(base, out.computad, incl);
  for (const auto& cell : cells) {
    GenRef g = out.computad->generator(cell.name);
    out.cells.push_back(term_classifier(out.computad, Term::var(g.sort, g.index)));
  }
  return out;
}

SkeletalFiltration skeletal_filtration(const ComputadPtr& c) {
  const auto& cat = c->base();
  SkeletalFiltration f;
  f.source = c;
  f.bottom = Computad::empty(c->signature_ptr());
  int top = -1;
  for (SortId s = 0; s < cat.num_sorts(); ++s)
    if (c->num_generators(s) > 0) top = std::max(top, cat.dim(s));
  ComputadPtr prev = f.bottom;
  for (int d = 0; d <= top; ++d) {
    FiltrationStage st;
    st.dim = d;
    st.computad = c->drop_above(d);
    std::vector<std::vector<int>> same(cat.num_sorts());
    for (SortId s = 0; s < cat.num_sorts(); ++s)
      for (int g = 0; g < prev->num_generators(s); ++g) same[s].push_back(g);
    st.kappa = var_morphism(prev, st.computad, same);
    for (SortId s = 0; s < cat.num_sorts(); ++s) {
      if (cat.dim(s) != d) continue;
      auto bd = boundary_computad(c->signature_ptr(), s);
      for (int g = 0; g < c->num_generators(s); ++g) {
        st.added.push_back({s, g});
        std::vector<std::vector<Term>> assign(cat.num_sorts());
        for (SortId j = 0; j < cat.num_sorts(); ++j)
          for (const auto& name : bd->generators(j)) assign[j].push_back(c->gluing(s, g, cat.arrow_index(name)));
        st.phi.push_back(make_morphism(bd, prev, std::move(assign)));
        st.psi.push_back(term_classifier(st.computad, Term::var(s, g)));
      }
    }
    prev = st.computad;
    f.stages.push_back(std::move(st));
  }
  return f;
}

ComputadPtr replay(const SkeletalFiltration& f) {
  ComputadPtr current = f.bottom;
  for (const auto& st : f.stages) {
    std::vector<CellAttachment> cells;
    for (std::size_t k = 0; k < st.added.size(); ++k) {
      const GenRef g = st.added[k];
      ComputadMorphism phi{st.phi[k].src, current, st.phi[k].assign};
      cells.push_back({g.sort, st.computad->generator_name(g), std::move(phi)});
    }
    current = attach_cells(current, cells).computad;
  }
  return current;
}

namespace {

std::vector<std::vector<int>> cell_env(const std::vector<std::vector<CofGenerator>>& gens) {
  std::vector<std::vector<int>> env(gens.size());
  for (std::size_t s = 0; s < gens.size(); ++s)
    for (const auto& g : gens[s]) env[s].push_back(g.cell);
  return env;
}

}  // namespace

UnderlyingComputad underlying_computad(const Algebra& a, int depth) {
  const auto& sig = a.signature_ptr();
  const auto& cat = sig->base();
  const Presheaf& x = a.carrier();
  UnderlyingComputad out;
  out.depth = depth;
  out.generators.resize(cat.num_sorts());
  std::vector<std::vector<std::string>> names(cat.num_sorts());
  std::vector<std::vector<std::vector<Term>>> gluing(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    auto current = Computad::from_terms(sig, names, gluing);
    const auto into = cat.into(s);
    if (!into.empty() && x.num_cells(s) > 0) {
      // the type enumeration is complete once the face sorts saturate
      TermEnumerator terms(current);
      for (ArrowId d : into) {
        SortId j = cat.arrow(d).src;
        if (terms.up_to(j, depth).size() != terms.up_to(j, depth + 1).size()) out.exact = false;
      }
    }
    auto env = cell_env(out.generators);
    auto gen = cat.generating_faces(s);
    struct Found {
      std::string name;
      CofGenerator g;
    };
    std::vector<Found> found;
    auto consider = [&](const std::vector<Term>& type) {
      std::vector<int> faces;
      try {
        for (const Term& t : type) faces.push_back(eval_with(a, t, env));
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::DepthExceeded) return;
        throw;
      }
      std::string suffix;
      if (!type.empty()) {
        suffix = "@(";
        bool first = true;
        for (ArrowId d : into) {
          if (!gen[cat.face_position(d)]) continue;
          if (!first) suffix += ",";
          first = false;
          suffix += cat.arrow(d).id + "=" + render(*current, type[cat.face_position(d)]);
        }
        suffix += ")";
      }
      for (int c = 0; c < x.num_cells(s); ++c) {
        bool ok = true;
        for (ArrowId d : into) ok = ok && x.act(d, c) == faces[cat.face_position(d)];
        if (ok) found.push_back({x.cell_name(s, c) + suffix, CofGenerator{s, type, c}});
      }
    };
    if (into.empty()) {
      consider({});
    } else if (x.num_cells(s) > 0) {
      auto bd = boundary_computad(sig, s);
      for_each_morphism(bd, current, depth, [&](const ComputadMorphism& m) {
        std::vector<Term> type;
        for (ArrowId d : into) {
          GenRef g = bd->generator(cat.arrow(d).id);
          type.push_back(m(g.sort, g.index));
        }
        consider(type);
        return true;
      });
    }
    std::sort(found.begin(), found.end(), [](const Found& p, const Found& q) { return p.name < q.name; });
    for (auto& f : found) {
      names[s].push_back(f.name);
      gluing[s].push_back(f.g.type);
      out.generators[s].push_back(std::move(f.g));
    }
  }
  out.computad = Computad::from_terms(sig, names, gluing);
  return out;
}

CofibrantReplacement counit_r(const Algebra& a, int depth) {
  CofibrantReplacement cr{a, underlying_computad(a, depth), {}, {}};
  cr.cof = free_algebra(cr.und.computad, depth);
  auto env = cell_env(cr.und.generators);
  const auto& terms = cr.cof.terms()->terms;
  cr.r.components.resize(terms.size());
  for (std::size_t s = 0; s < terms.size(); ++s)
    for (const Term& t : terms[s]) cr.r.components[s].push_back(eval_with(a, t, env));
  return cr;
}

Term lift_v(const CofibrantReplacement& cr, SortId s, const std::vector<Term>& type, int cell) {
  const auto& cat = cr.algebra.carrier().base();
  if (s < 0 || s >= cat.num_sorts()) fail(ErrorKind::UnknownSort, "sort index out of range");
  if (cell < 0 || cell >= cr.algebra.carrier().num_cells(s)) fail(ErrorKind::UnknownCell, "cell outside the carrier");
  if (type.size() != cat.into(s).size()) fail(ErrorKind::NotCompatible, "type has the wrong number of faces");
  auto env = cell_env(cr.und.generators);
  for (ArrowId d : cat.into(s)) {
    const Term& t = type[cat.face_position(d)];
    if (!t.valid() || t.sort() != cat.arrow(d).src) fail(ErrorKind::NotCompatible, "type member of the wrong sort");
    check_term(*cr.und.computad, t);
    if (eval_with(cr.algebra, t, env) != cr.algebra.carrier().act(d, cell))
      fail(ErrorKind::NotCompatible, "face " + cat.arrow(d).id + " of the cell differs from the evaluated type");
  }
  const auto& gens = cr.und.generators[s];
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (gens[g].cell == cell && gens[g].type == type) return Term::var(s, static_cast<int>(g));
  fail(ErrorKind::DepthExceeded, "the type lies beyond the depth bound");
}

std::optional<TfibCounterexample> check_trivial_fibration(const Presheaf& x, const Presheaf& y,
                                                          const PresheafMorphism& sigma,
                                                          const std::vector<SortId>& sorts) {
  const auto& cat = x.base();
  if (!cat.equals(y.base())) fail(ErrorKind::BaseMismatch, "presheaves over different bases");
  if (!is_natural(x, y, sigma)) fail(ErrorKind::NotCompatible, "the map is not a presheaf morphism");
  std::vector<SortId> todo = sorts;
  if (todo.empty())
    for (SortId s = 0; s < cat.num_sorts(); ++s) todo.push_back(s);
  for (SortId s : todo) {
    Presheaf bd = boundary_representable(x.base_ptr(), s);
    const auto into = cat.into(s);
    std::optional<TfibCounterexample> bad;
    for_each_hom(bd, x, [&](const PresheafMorphism& m) {
      std::vector<int> fam(into.size());
      for (ArrowId d : into) fam[cat.face_position(d)] = m(bd.cell(cat.arrow(d).id));
      for (int c = 0; c < y.num_cells(s); ++c) {
        bool square = true;
        for (ArrowId d : into) square = square && y.act(d, c) == sigma(cat.arrow(d).src, fam[cat.face_position(d)]);
        if (!square) continue;
        bool filled = false;
        for (int e = 0; e < x.num_cells(s) && !filled; ++e) {
          if (sigma(s, e) != c) continue;
          bool fits = true;
          for (ArrowId d : into) fits = fits && x.act(d, e) == fam[cat.face_position(d)];
          filled = fits;
        }
        if (!filled) {
          bad = TfibCounterexample{s, c, m.flatten()};
          return false;
        }
      }
      return true;
    });
    if (bad) return bad;
  }
  return std::nullopt;
}

}  // namespace cptd
