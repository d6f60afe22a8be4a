// Acceptance checks. Each criterion prints one PASS/FAIL line; the exit code
// is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "computads/cofibrant.hpp"
#include "computads/colimit.hpp"
#include "computads/examples.hpp"
#include "computads/factorization.hpp"
#include "computads/plex.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cptd;

namespace {

// Collects the first failure and counts the checks made.
struct Report {
  long checks = 0;
  std::string failure;
  std::string note;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (!ok && failure.empty()) failure = what();
  }
  bool ok() const { return failure.empty(); }
};

std::vector<Term> all_terms(const ComputadPtr& c, int d) {
  std::vector<Term> out;
  TermEnumerator e(c);
  for (SortId s = 0; s < c->base().num_sorts(); ++s) {
    const auto& ts = e.up_to(s, d);
    out.insert(out.end(), ts.begin(), ts.end());
  }
  return out;
}

ComputadPtr kan_simplex(int n, int m) {
  auto sig = examples::sigma_kan(n);
  return Computad::free(examples::simplex(sig->base_ptr(), m), sig);
}

// A vertex with an edge whose 0-face is a face of a filler on that vertex.
ComputadPtr kan_glued() {
  auto sig = examples::sigma_kan(1);
  return Computad::create(sig, {{"[0]", {"a"}}, {"[1]", {"e"}}},
                          {{"e", "d1_0", RawTerm::make_app("face_0_1", {{"d1_1", RawTerm::make_var("a")}})},
                           {"e", "d1_1", RawTerm::make_var("a")}});
}

ComputadPtr loop() {
  return Computad::from_terms(fx::sigma_comp(), {{"x"}, {"loop"}}, {{}, {{Term::var(0, 0), Term::var(0, 0)}}});
}

std::string show(const Computad& c, const Term& t) { return render(c, t); }

// Support straight from the definition: a variable contributes itself and the
// support of its gluing terms, an application the supports of its arguments.
using GenSet = std::set<std::pair<SortId, int>>;

void support_into(const Computad& c, const Term& t, GenSet& out) {
  if (t.is_var()) {
    if (!out.insert({t.sort(), t.generator()}).second) return;
    for (const Term& g : c.gluing_family(t.sort(), t.generator())) support_into(c, g, out);
    return;
  }
  for (const Term& a : t.args()) support_into(c, a, out);
}

GenSet support_oracle(const Computad& c, const Term& t) {
  GenSet out;
  support_into(c, t, out);
  return out;
}

GenSet as_set(const Support& s) {
  GenSet out;
  for (SortId k = 0; k < static_cast<SortId>(s.size()); ++k)
    for (int g : s[k]) out.insert({k, g});
  return out;
}

// Counts variable-to-variable isomorphisms phi: a -> b, bijective per sort,
// satisfying the boundary condition and `accept`.
long count_isos(const ComputadPtr& a, const ComputadPtr& b, const std::function<bool(const ComputadMorphism&)>& accept) {
  const int n = a->base().num_sorts();
  for (SortId s = 0; s < n; ++s)
    if (a->num_generators(s) != b->num_generators(s)) return 0;
  std::vector<std::vector<int>> perm(n);
  for (SortId s = 0; s < n; ++s) {
    perm[s].resize(a->num_generators(s));
    for (int g = 0; g < a->num_generators(s); ++g) perm[s][g] = g;
  }
  long count = 0;
  std::function<void(SortId)> go = [&](SortId s) {
    if (s == n) {
      std::vector<std::vector<Term>> assign(n);
      for (SortId k = 0; k < n; ++k)
        for (int g : perm[k]) assign[k].push_back(Term::var(k, g));
      if (oracle::boundary_ok(*a, *b, assign) && accept(ComputadMorphism{a, b, assign})) ++count;
      return;
    }
    std::sort(perm[s].begin(), perm[s].end());
    do go(s + 1);
    while (std::next_permutation(perm[s].begin(), perm[s].end()));
  };
  go(0);
  return count;
}

// A second image factorisation built from the support of sigma, with the
// image generators renamed.
ImageFactorization factorize_oracle(const ComputadMorphism& sigma) {
  const Computad& dst = *sigma.dst;
  const auto& cat = dst.base();
  GenSet used;
  for (SortId s = 0; s < cat.num_sorts(); ++s)
    for (int g = 0; g < sigma.src->num_generators(s); ++g) support_into(dst, sigma(s, g), used);
  std::vector<std::vector<int>> rename(cat.num_sorts());
  std::vector<std::vector<std::string>> names(cat.num_sorts());
  std::vector<std::vector<std::vector<Term>>> gluing(cat.num_sorts());
  std::vector<std::vector<int>> back(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s) rename[s].assign(dst.num_generators(s), -1);
  for (auto [s, g] : used) {
    rename[s][g] = static_cast<int>(names[s].size());
    names[s].push_back("img_" + dst.generator_name(s, g));
    back[s].push_back(g);
  }
  for (SortId s = 0; s < cat.num_sorts(); ++s)
    for (int g : back[s]) {
      std::vector<Term> fam;
      for (const Term& t : dst.gluing_family(s, g)) fam.push_back(rename_vars(t, rename));
      gluing[s].push_back(std::move(fam));
    }
  auto image = Computad::from_terms(sigma.dst->signature_ptr(), names, gluing);
  std::vector<std::vector<Term>> mono(cat.num_sorts()), epi(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    mono[s].resize(image->num_generators(s));
    for (int g : back[s]) {
      GenRef r = image->generator("img_" + dst.generator_name(s, g));
      mono[s][r.index] = Term::var(s, g);
    }
    for (int g = 0; g < sigma.src->num_generators(s); ++g) {
      Term t = rename_vars(sigma(s, g), rename);
      // from_terms may reorder generators; map by name.
      epi[s].push_back(substitute(t, [&](SortId k, int i) {
        return Term::var(k, image->generator(names[k][i]).index);
      }));
    }
  }
  return {make_morphism(sigma.src, image, epi), make_morphism(image, sigma.dst, mono)};
}

bool full_support(const ComputadMorphism& m) {
  GenSet used;
  for (SortId s = 0; s < m.src->base().num_sorts(); ++s)
    for (int g = 0; g < m.src->num_generators(s); ++g) support_into(*m.dst, m(s, g), used);
  return static_cast<int>(used.size()) == m.dst->total_generators();
}

bool injective_var(const ComputadMorphism& m) {
  GenSet seen;
  for (SortId s = 0; s < m.src->base().num_sorts(); ++s)
    for (int g = 0; g < m.src->num_generators(s); ++g) {
      const Term& t = m(s, g);
      if (!t.is_var() || !seen.insert({t.sort(), t.generator()}).second) return false;
    }
  return true;
}

// ---- criteria ---------------------------------------------------------------

std::vector<ComputadPtr> term_fixtures() {
  return {fx::walk2(), fx::path(3), fx::disk_a(), kan_simplex(2, 1), kan_simplex(2, 2)};
}

void boundary_functoriality(Report& r) {
  for (const auto& c : term_fixtures()) {
    const auto& cat = c->base();
    for (const Term& t : all_terms(c, 2))
      for (ArrowId d = 0; d < cat.num_arrows(); ++d) {
        if (cat.arrow(d).dst != t.sort()) continue;
        Term dt = boundary(*c, d, t);
        if (cat.arrow(d).src == cat.arrow(d).dst)
          r.expect(dt == t, [&] { return "identity face at " + show(*c, t); });
        else
          r.expect(dt == oracle::face_of(*c, d, t), [&] { return "face oracle at " + show(*c, t); });
        for (ArrowId d2 = 0; d2 < cat.num_arrows(); ++d2) {
          if (cat.arrow(d2).dst != cat.arrow(d).src) continue;
          r.expect(boundary(*c, cat.compose(d, d2), t) == boundary(*c, d2, dt), [&] {
            return "(" + cat.arrow(d).id + "." + cat.arrow(d2).id + ")* " + show(*c, t);
          });
        }
      }
  }
}

// The smallest truncation of Term(C) containing all terms of depth <= d.
TermPresheaf closed_term_presheaf(const ComputadPtr& c, int d) {
  for (int k = d;; ++k) {
    try {
      return term_presheaf(c, k);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DepthExceeded || k > d + 4) throw;
    }
  }
}

void monad_laws(Report& r) {
  for (const auto& c : term_fixtures()) {
    TermPresheaf tp = closed_term_presheaf(c, 2);
    auto free_tc = Computad::free(tp.presheaf, c->signature_ptr());
    for (const Term& t : all_terms(c, 2)) {
      CellRef cell = tp.cell_of(t);
      r.expect(mult(tp, Term::var(cell.sort, cell.index)) == t, [&] { return "mu.eta at " + show(*c, t); });
      Term lifted = substitute(t, [&](SortId s, int g) {
        CellRef v = tp.cell_of(Term::var(s, g));
        return Term::var(v.sort, v.index);
      });
      check_term(*free_tc, lifted);
      r.expect(mult(tp, lifted) == t, [&] { return "mu.Term(eta) at " + show(*c, t); });
    }
  }
  // Associativity on all depth <= 1 terms over Cptd(Term Cptd(Term C)).
  for (const auto& c : {fx::walk2(), fx::path(3)}) {
    const auto& sig = c->signature_ptr();
    TermPresheaf tp1 = closed_term_presheaf(c, 2);
    auto f1 = Computad::free(tp1.presheaf, sig);
    TermPresheaf tp2 = term_presheaf(f1, 1);
    auto f2 = Computad::free(tp2.presheaf, sig);
    for (const Term& x : all_terms(f2, 1)) {
      Term left = mult(tp1, mult(tp2, x));
      Term inner = substitute(x, [&](SortId s, int g) {
        CellRef v = tp1.cell_of(mult(tp1, tp2.terms[s][g]));
        return Term::var(v.sort, v.index);
      });
      Term right = mult(tp1, inner);
      r.expect(left == right, [&] { return "associativity at " + show(*f2, x); });
    }
  }
}

void cartesian_unit(Report& r) {
  std::mt19937 rng(301);
  auto sig = fx::sigma_comp();
  auto cat = sig->base_ptr();
  int morphisms = 0;
  while (morphisms < 20) {
    Presheaf x = oracle::random_presheaf(cat, rng, 3);
    Presheaf y = oracle::random_presheaf(cat, rng, 3);
    auto homs = enumerate_hom(x, y);
    if (homs.empty()) continue;
    PresheafMorphism m = homs[rng() % homs.size()];
    ++morphisms;
    auto cx = Computad::free(x, sig);
    auto cy = Computad::free(y, sig);
    auto tm = free_map(cx, cy, m);
    for (const Term& t : all_terms(cx, 2))
      for (int cell = 0; cell < y.num_cells(t.sort()); ++cell) {
        const bool hits = apply(tm, t) == Term::var(t.sort(), cell);
        int preimages = 0;
        for (int xc = 0; xc < x.num_cells(t.sort()); ++xc)
          preimages += t == Term::var(t.sort(), xc) && m.components[t.sort()][xc] == cell;
        r.expect(hits == (preimages == 1) && preimages <= 1, [&] { return "pullback fails at " + show(*cx, t); });
      }
  }
}

void universal_property(Report& r) {
  auto w = fx::walk2();
  Algebra free = free_algebra(w, 2);
  Algebra path = fx::pathcat();
  long count = 0;
  oracle::all_functions(free.carrier(), path.carrier(), [&](const std::vector<std::vector<int>>& f) {
    if (!oracle::natural(free.carrier(), path.carrier(), f)) return;
    count += !check_algebra_morphism(free, path, PresheafMorphism{f});
  });
  const long expected = oracle::assignment_count(w, path);
  r.expect(count == expected && count > 0, [&] {
    return "algebra morphisms " + std::to_string(count) + " vs assignments " + std::to_string(expected);
  });
  r.note = std::to_string(count) + " morphisms";
}

void support_rules(Report& r) {
  std::vector<ComputadPtr> cs = term_fixtures();
  cs.push_back(kan_glued());
  for (const auto& c : cs) {
    const auto& cat = c->base();
    for (const Term& t : all_terms(c, 2)) {
      GenSet st = support_oracle(*c, t);
      r.expect(as_set(support(*c, t)) == st, [&] { return "support of " + show(*c, t); });
      for (ArrowId d : cat.into(t.sort())) {
        GenSet sd = support_oracle(*c, boundary(*c, d, t));
        r.expect(std::includes(st.begin(), st.end(), sd.begin(), sd.end()),
                 [&] { return "face support of " + show(*c, t); });
      }
    }
  }
  std::vector<std::pair<ComputadPtr, ComputadPtr>> pairs{
      {fx::walk2(), fx::path(3)}, {fx::walk2(), fx::walk2()}, {fx::path(3), fx::path(3)},
      {fx::disk_a(), fx::walk2()}, {fx::path(2), fx::walk2()}, {kan_simplex(2, 1), kan_simplex(2, 2)}};
  for (const auto& [src, dst] : pairs) {
    auto ms = enumerate_morphisms(src, dst, 1);
    if (ms.size() > 40) ms.resize(40);
    r.expect(!ms.empty(), [&] { return std::string("no morphisms for a fixture pair"); });
    for (const auto& m : ms)
      for (const Term& t : all_terms(src, 2)) {
        GenSet expected;
        for (auto [s, g] : support_oracle(*src, t)) support_into(*dst, m(s, g), expected);
        Term mt = apply(m, t);
        r.expect(as_set(support(*dst, mt)) == expected, [&] { return "supp of image of " + show(*src, t); });
        r.expect(support_oracle(*dst, mt) == expected, [&] { return "oracle supp of image of " + show(*src, t); });
      }
  }
}

void factorisation(Report& r) {
  std::mt19937 rng(6);
  auto sig = fx::sigma_comp();
  int sampled = 0;
  while (sampled < 100) {
    auto src = oracle::random_computad(sig, rng, 2);
    auto dst = oracle::random_computad(sig, rng, 3);
    auto ms = enumerate_morphisms(src, dst, 1);
    if (ms.empty()) continue;
    const ComputadMorphism& m = ms[rng() % ms.size()];
    ++sampled;
    auto f = image_factorize(m);
    r.expect(compose(f.mono, f.epi) == m, [] { return std::string("mono o epi differs from sigma"); });
    r.expect(injective_var(f.mono) && is_injective_var(f.mono), [] { return std::string("mono not injective"); });
    r.expect(full_support(f.epi) && is_epi(f.epi), [] { return std::string("epi support not full"); });
    auto g = factorize_oracle(m);
    r.expect(compose(g.mono, g.epi) == m, [] { return std::string("oracle factorisation differs"); });
    const long isos = count_isos(f.mono.src, g.mono.src, [&](const ComputadMorphism& phi) {
      return compose(g.mono, phi) == f.mono && compose(phi, f.epi) == g.epi;
    });
    r.expect(isos == 1, [&] { return "comparison isos: " + std::to_string(isos); });
  }
  // Idempotents: a cell folded onto a parallel term, and idempotent endomorphisms found by search.
  int split = 0;
  auto check_split = [&](const ComputadMorphism& e, const ComputadPtr& expected) {
    auto sp = split_idempotent(e);
    ++split;
    r.expect(compose(sp.section, sp.retraction) == e, [] { return std::string("section o retraction != e"); });
    r.expect(compose(sp.retraction, sp.section) == identity_morphism(sp.section.src),
             [] { return std::string("retraction o section != id"); });
    if (expected) r.expect(isomorphic(sp.section.src, expected), [] { return std::string("splitting object"); });
  };
  const auto& cat = sig->base();
  for (int k = 0; k < 60; ++k) {
    auto c = oracle::random_computad(sig, rng, 3);
    auto arrows = enumerate_terms(c, 1, 1);
    if (!arrows.empty()) {
      const Term& tau = arrows[rng() % arrows.size()];
      std::vector<std::vector<std::string>> names(cat.num_sorts());
      for (SortId s = 0; s < cat.num_sorts(); ++s)
        for (int g = 0; g < c->num_generators(s); ++g) names[s].push_back(c->generator_name(s, g));
      auto gluing = c->gluing_table();
      gluing.resize(cat.num_sorts());
      names[1].push_back("zz_fold");
      std::vector<Term> fam;
      for (ArrowId d : cat.into(1)) fam.push_back(boundary(*c, d, tau));
      gluing[1].push_back(fam);
      auto a = Computad::from_terms(sig, names, gluing);
      std::vector<std::vector<Term>> assign(cat.num_sorts());
      for (SortId s = 0; s < cat.num_sorts(); ++s)
        for (int g = 0; g < c->num_generators(s); ++g) assign[s].push_back(Term::var(s, g));
      assign[1].push_back(tau);
      auto e = make_morphism(a, a, assign);
      r.expect(compose(e, e) == e, [] { return std::string("fold not idempotent"); });
      check_split(e, c);
    }
    auto small = oracle::random_computad(sig, rng, 2);
    int found = 0;
    for_each_morphism(small, small, 1, [&](const ComputadMorphism& e) {
      if (compose(e, e) == e) {
        check_split(e, nullptr);
        ++found;
      }
      return found < 20;
    });
  }
  r.expect(split >= 100, [&] { return "only " + std::to_string(split) + " idempotents"; });
  r.note = std::to_string(sampled) + " morphisms, " + std::to_string(split) + " idempotents";
}

void representability(Report& r) {
  auto sig = fx::sigma_comp();
  long plexes = 0, total = 0;
  for (const auto& c : {fx::walk2(), fx::disk_a()})
    for (SortId s = 0; s < sig->base().num_sorts(); ++s) {
      auto terms = enumerate_terms(c, s, 3);
      for (const Polyplex& p : enumerate_polyplexes(sig, s, 2)) {
        auto rep = polyplex_computad(sig, p);
        const long homs = oracle::var_morphism_count(rep.computad, c);
        long fibre = 0;
        for (const Term& t : terms) fibre += classify(*c, t) == p;
        ++plexes;
        total += fibre;
        r.expect(homs == fibre, [&] {
          return render(*sig, p) + ": " + std::to_string(homs) + " maps vs fibre " + std::to_string(fibre);
        });
      }
    }
  r.note = std::to_string(plexes) + " polyplexes, fibres total " + std::to_string(total);
}

void nerve_reconstruction(Report& r) {
  std::mt19937 rng(8);
  for (const auto& sig : {fx::sigma_comp(), examples::sigma_kan(1)})
    for (int k = 0; k < 50; ++k) {
      auto c = oracle::random_computad(sig, rng, 3);
      auto back = reconstruct_from_nerve(nerve(c));
      r.expect(isomorphic(back, c), [&] { return "reconstruction " + std::to_string(k); });
    }
}

void grid_figure(Report& r) {
  auto cube = examples::cube_category(1);
  Presheaf pos = examples::grid_positions({{0, 1}, {4, 1}}, cube);
  std::vector<int> counts;
  for (const auto& subset : std::vector<std::vector<int>>{{}, {0}, {1}, {0, 1}})
    counts.push_back(pos.num_cells(cube->sort_index(examples::cube_sort(subset))));
  r.expect(counts == std::vector<int>{10, 8, 5, 4}, [&] {
    std::ostringstream o;
    for (int n : counts) o << n << ' ';
    return "counts " + o.str();
  });
  r.expect(examples::grid_counts({{0, 1}, {4, 1}}, cube) == counts, [] { return std::string("grid_counts"); });
}

void kan_pack(Report& r) {
  auto sig = examples::sigma_kan(2);
  const auto& cat = sig->base();
  for (const auto& f : sig->symbols()) {
    auto ar = Computad::free(f.arity, sig);
    for (ArrowId d : cat.into(f.sort))
      for (ArrowId d2 : cat.into(cat.arrow(d).src)) {
        const Term& outer = f.boundary.at(cat.face_position(cat.compose(d, d2)));
        const Term& inner = f.boundary.at(cat.face_position(d));
        r.expect(boundary(*ar, d2, inner) == outer, [&] { return "cocycle of " + f.id; });
      }
  }
  auto c = Computad::free(examples::simplex(sig->base_ptr(), 1), sig);
  oracle::BucketEnumerator brute(c);
  TermEnumerator mine(c);
  for (int m = 0; m <= 1; ++m) {
    SortId s = cat.sort_index(examples::simplex_sort(m));
    for (int d = 0; d <= 2; ++d) {
      auto theirs = brute.terms(s, d);
      std::sort(theirs.begin(), theirs.end());
      const auto& ours = mine.up_to(s, d);
      r.note += (r.note.empty() ? "counts " : " ") + std::to_string(ours.size());
      r.expect(ours == theirs, [&] {
        return "[" + std::to_string(m) + "] depth " + std::to_string(d) + ": " + std::to_string(ours.size()) +
               " vs " + std::to_string(theirs.size());
      });
    }
  }
}

void cofibrant(Report& r) {
  Algebra z = fx::z5_group();
  auto cr = counit_r(z, 1);
  r.expect(cr.und.exact, [] { return std::string("Und not exact"); });
  auto cx = check_trivial_fibration(cr.cof.carrier(), z.carrier(), cr.r);
  r.expect(!cx, [] { return std::string("r is not a trivial fibration"); });
  r.expect(!check_algebra_morphism(cr.cof, z, cr.r), [] { return std::string("r is not an algebra map"); });
  std::mt19937 rng(11);
  for (int k = 0; k < 20; ++k) {
    auto c = oracle::random_computad(z.signature_ptr(), rng, 4);
    const long lhs = oracle::var_morphism_count(c, cr.und.computad);
    const long rhs = oracle::assignment_count(c, z);
    r.expect(lhs == rhs && count_var_morphisms(c, cr.und.computad) == lhs,
             [&] { return std::to_string(lhs) + " vs " + std::to_string(rhs); });
  }
}

void filtration_replay(Report& r) {
  std::vector<std::pair<std::string, ComputadPtr>> cs{
      {"walk2", fx::walk2()},          {"disk_a", fx::disk_a()},        {"empty", Computad::empty(fx::sigma_comp())},
      {"path3", fx::path(3)},          {"loop", loop()},                {"kan1", kan_simplex(1, 1)},
      {"kan2", kan_simplex(2, 2)},     {"kan_glued", kan_glued()}};
  for (const auto& [name, c] : cs) {
    auto f = skeletal_filtration(c);
    r.expect(isomorphic(replay(f), c), [&, n = name] { return "replay of " + n; });
  }
}

struct Criterion {
  int id;
  const char* name;
  void (*run)(Report&);
  double limit_s;  // 0 for no limit
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "boundary functoriality", boundary_functoriality, 30},
      {2, "monad laws", monad_laws, 60},
      {3, "cartesian unit", cartesian_unit, 0},
      {4, "universal property of free algebras", universal_property, 0},
      {5, "supports of faces and images", support_rules, 0},
      {6, "image factorisation and idempotent splitting", factorisation, 0},
      {7, "polyplex representability", representability, 0},
      {8, "nerve reconstruction", nerve_reconstruction, 0},
      {9, "grid positions", grid_figure, 0},
      {10, "Kan signature and term counts", kan_pack, 120},
      {11, "cofibrant replacement", cofibrant, 0},
      {12, "skeletal filtration replay", filtration_replay, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Report r;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(r);
    } catch (const std::exception& e) {
      if (r.failure.empty()) r.failure = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs >= c.limit_s && r.ok()) r.failure = "time limit exceeded";
    const bool ok = r.ok() && r.checks > 0;
    if (!ok && r.failure.empty()) r.failure = "no checks ran";
    failed += !ok;
    if (!r.note.empty()) r.note += ", ";
    std::printf("%s [%d] %s (%s%ld checks, %.2f s)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.name, r.note.c_str(), r.checks,
                secs, ok ? "" : ": ", ok ? "" : r.failure.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
