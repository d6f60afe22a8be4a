#include <doctest.h>

#include <algorithm>
#include <random>

#include "computads/algebra.hpp"
#include "computads/examples.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cptd;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ParseError;
}

std::vector<Term> all_terms(const ComputadPtr& c, int d) {
  std::vector<Term> out;
  TermEnumerator e(c);
  for (SortId s = 0; s < c->base().num_sorts(); ++s) {
    const auto& ts = e.up_to(s, d);
    out.insert(out.end(), ts.begin(), ts.end());
  }
  return out;
}

Term app(const Computad& c, const std::string& f, std::vector<Term> args) {
  return mk_app(c, c.signature().symbol_index(f), std::move(args));
}

// Algebra morphisms by filtering every presheaf map through the compatibility check.
long algebra_morphism_count(const Algebra& x, const Algebra& y) {
  long n = 0;
  for (const auto& m : enumerate_hom(x.carrier(), y.carrier())) n += !check_algebra_morphism(x, y, m).has_value();
  return n;
}


// A random Sigma_comp computad with at most three generators.
ComputadPtr random_small_computad(std::mt19937& rng) {
  const int objs = 1 + static_cast<int>(rng() % 2);
  const int arrows = static_cast<int>(rng() % (4 - objs));
  std::vector<std::string> o, a;
  std::vector<GluingDecl> glue;
  for (int k = 0; k < objs; ++k) o.push_back("o" + std::to_string(k));
  for (int k = 0; k < arrows; ++k) {
    a.push_back("e" + std::to_string(k));
    glue.push_back({a.back(), "s", RawTerm::make_var(o[rng() % objs])});
    glue.push_back({a.back(), "t", RawTerm::make_var(o[rng() % objs])});
  }
  return Computad::create(fx::sigma_comp(), {{"o", o}, {"a", a}}, glue);
}

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("PATHCAT is an algebra") {
    Algebra p = fx::pathcat();
    CHECK(p.carrier().num_cells(0) == 3);
    CHECK(p.carrier().num_cells(1) == 6);
    CHECK(p.inputs(0).size() == 10);
    const auto& c = *p.carrier_computad();
    Term t = app(c, "comp", {mk_var(c, "A"), mk_var(c, "B"), mk_var(c, "C"), mk_var(c, "AB"), mk_var(c, "BC")});
    CHECK(p.carrier().cell_name(1, eval_term(p, t)) == "ABC");
    Term id = app(c, "comp", {mk_var(c, "A"), mk_var(c, "A"), mk_var(c, "B"), mk_var(c, "idA"), mk_var(c, "AB")});
    CHECK(p.carrier().cell_name(1, eval_term(p, id)) == "AB");
  }

  TEST_CASE("tables are validated") {
    Presheaf x = fx::pathcat_carrier();
    auto rows = fx::comp_rows(x, [&](int s, int t) { return fx::arrow_between(x, s, t); });
    SUBCASE("boundary condition") {
      auto bad = rows;
      for (auto& r : bad)
        if (r.input[0] == 0 && r.input[2] == 2) r.value = x.cell("AB").index;
      CHECK(kind_of([&] { Algebra::from_tables(fx::sigma_comp(), x, {bad}); }) ==
            ErrorKind::BoundaryConditionFailure);
    }
    SUBCASE("missing row") {
      auto bad = rows;
      bad.pop_back();
      CHECK(kind_of([&] { Algebra::from_tables(fx::sigma_comp(), x, {bad}); }) == ErrorKind::PartialTable);
    }
    SUBCASE("row outside the hom set") {
      auto bad = rows;
      bad.push_back({{0, 0, 0, 0, 0}, 0});
      CHECK(kind_of([&] { Algebra::from_tables(fx::sigma_comp(), x, {bad}); }) == ErrorKind::PartialTable);
    }
    SUBCASE("missing table") {
      CHECK(kind_of([&] { Algebra::from_tables(fx::sigma_comp(), x, {}); }) == ErrorKind::PartialTable);
    }
  }

  TEST_CASE("empty signature") {
    std::mt19937 rng(7);
    for (int k = 0; k < 10; ++k) {
      Presheaf x = oracle::random_presheaf(fx::arrow_category(), rng, 3);
      Algebra a = Algebra::from_tables(fx::sigma_empty_arrow(), x, {});
      for (SortId s = 0; s < 2; ++s)
        for (int c = 0; c < x.num_cells(s); ++c) CHECK(eval_term(a, Term::var(s, c)) == c);
    }
  }

  TEST_CASE("Z5 arithmetic") {
    Algebra z = fx::z5_group();
    const auto& c = *z.carrier_computad();
    auto var = [&](int k) { return mk_var(c, std::to_string(k)); };
    CHECK(eval_term(z, app(c, "add", {var(2), var(4)})) == 1);
    CHECK(eval_term(z, app(c, "add", {var(2), app(c, "add", {var(4), var(1)})})) == 2);
    CHECK(eval_term(z, app(c, "neg", {var(3)})) == 2);
    CHECK(eval_term(z, app(c, "zero", {})) == 0);
    CHECK(eval_term(z, var(3)) == 3);
    CHECK(kind_of([&] { eval_term(z, Term::var(0, 9)); }) == ErrorKind::SortMismatch);

    // the tabled and the functional presentation agree
    std::vector<std::vector<TableRow>> tables(3);
    for (int f = 0; f < 3; ++f)
      for (const auto& in : z.inputs(f)) tables[f].push_back({in, z.interpret(f, in)});
    Algebra zt = Algebra::from_tables(z.signature_ptr(), z.carrier(), tables);
    std::mt19937 rng(3);
    for (int k = 0; k < 200; ++k) {
      int f = static_cast<int>(rng() % 3);
      auto ins = z.inputs(f);
      const auto& in = ins[rng() % ins.size()];
      CHECK(zt.interpret(f, in) == z.interpret(f, in));
    }
  }

  TEST_CASE("algebra morphisms") {
    Algebra z = fx::z5_group();
    PresheafMorphism id{{{0, 1, 2, 3, 4}}};
    PresheafMorphism zero{{{0, 0, 0, 0, 0}}};
    PresheafMorphism plus1{{{1, 2, 3, 4, 0}}};
    CHECK_FALSE(check_algebra_morphism(z, z, id).has_value());
    CHECK_FALSE(check_algebra_morphism(z, z, zero).has_value());
    auto cx = check_algebra_morphism(z, z, plus1);
    REQUIRE(cx.has_value());
    CHECK(z.signature().symbol(cx->symbol).id == "add");

    Algebra m = fx::z5_module();
    PresheafMorphism twice{{{0, 2, 4, 1, 3}, {0, 2, 4, 1, 3}}};
    auto bad = check_algebra_morphism(m, m, twice);
    REQUIRE(bad.has_value());
    // doubling preserves the additive structure but not the ring structure
    const auto& sig = m.signature();
    for (const char* f : {"add_R", "add_V", "neg_R", "neg_V", "zero_R", "zero_V"}) {
      int fi = sig.symbol_index(f);
      for (const auto& in : m.inputs(fi)) {
        AlgebraInput mapped;
        for (std::size_t k = 0; k < in.size(); ++k) mapped.push_back(twice(sig.symbol(fi).arity.unflat(k).sort, in[k]));
        CHECK(twice(sig.symbol(fi).sort, m.interpret(fi, in)) == m.interpret(fi, mapped));
      }
    }
    CHECK(m.interpret(sig.symbol_index("one_R"), {}) == 1);
    CHECK(twice(0, 1) != 1);
    PresheafMorphism zero2{{{0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}};
    CHECK(check_algebra_morphism(m, m, zero2).has_value());

    CHECK(kind_of([&] { check_algebra_morphism(z, m, zero); }) == ErrorKind::BaseMismatch);
    Algebra p = fx::pathcat();
    PresheafMorphism swap_ends{{{2, 1, 0}, {0, 1, 2, 3, 4, 5}}};
    CHECK(kind_of([&] { check_algebra_morphism(p, p, swap_ends); }) == ErrorKind::NotCompatible);
  }

  TEST_CASE("free algebras") {
    auto w = fx::walk2();
    Algebra fw = free_algebra(w, 1);
    const SortId a = 1;
    REQUIRE(fw.terms());
    auto carrier_terms = fw.terms()->terms[a];
    auto expected = enumerate_terms(w, a, 1);
    std::sort(carrier_terms.begin(), carrier_terms.end());
    std::sort(expected.begin(), expected.end());
    CHECK(carrier_terms == expected);
    CHECK(fw.carrier().num_cells(a) == 3);
    int u = fw.terms()->index.at(mk_var(*w, "u")).index;
    int v = fw.terms()->index.at(mk_var(*w, "v")).index;
    int p = fw.terms()->index.at(mk_var(*w, "p")).index;
    int q = fw.terms()->index.at(mk_var(*w, "q")).index;
    int r = fw.terms()->index.at(mk_var(*w, "r")).index;
    int uv = fw.interpret(0, {p, q, r, u, v});
    CHECK(fw.terms()->terms[a][uv] == fx::comp_uv(w));
    check_boundary_condition(fw);

    // a loop has terms of every depth; the truncation reports what it cannot reach
    auto loop = Computad::create(fx::sigma_comp(), {{"o", {"x"}}, {"a", {"e"}}},
                                 {{"e", "s", RawTerm::make_var("x")}, {"e", "t", RawTerm::make_var("x")}});
    Algebra fl = free_algebra(loop, 1);
    CHECK(fl.carrier().num_cells(a) == 2);
    int e = fl.terms()->index.at(mk_var(*loop, "e")).index;
    int ee = fl.interpret(0, {0, 0, 0, e, e});
    CHECK(kind_of([&] { fl.interpret(0, {0, 0, 0, ee, e}); }) == ErrorKind::DepthExceeded);
    check_boundary_condition(fl);

    auto empty = Computad::create(fx::sigma_comp(), {}, {});
    for (int d = 1; d <= 3; ++d) {
      Algebra fe = free_algebra(empty, d);
      CHECK(fe.carrier().total_cells() == 0);
    }
  }

  TEST_CASE("morphisms from generators") {
    Algebra p = fx::pathcat();
    auto w = fx::walk2();
    const Presheaf& x = p.carrier();
    auto idx = [&](const char* n) { return x.cell(n).index; };
    auto ext = morphism_from_generators(w, p, {{idx("A"), idx("B"), idx("C")}, {idx("AB"), idx("BC")}});
    CHECK(x.cell_name(1, ext(fx::comp_uv(w))) == "ABC");
    CHECK(kind_of([&] {
            morphism_from_generators(w, p, {{idx("A"), idx("B"), idx("C")}, {idx("BC"), idx("BC")}});
          }) == ErrorKind::BoundaryConditionFailure);
    CHECK(kind_of([&] { morphism_from_generators(w, p, {{idx("A")}, {}}); }) == ErrorKind::UnknownGenerator);

    // assignments from the representable on o are exactly the objects
    auto d_o = representable_computad(fx::sigma_comp(), 0);
    CHECK(oracle::assignment_count(d_o, p) == 3);
  }

  TEST_CASE("eval is a unit and commutes with boundaries") {
    std::mt19937 rng(11);
    std::vector<Algebra> algebras{fx::pathcat(), fx::z5_group()};
    while (algebras.size() < 8)
      if (auto a = oracle::random_comp_algebra(rng)) algebras.push_back(*a);
    for (const auto& alg : algebras) {
      const auto& c = alg.carrier_computad();
      const auto& cat = c->base();
      for (SortId s = 0; s < cat.num_sorts(); ++s)
        for (int k = 0; k < alg.carrier().num_cells(s); ++k) CHECK(eval_term(alg, Term::var(s, k)) == k);
      const int depth = alg.signature().num_symbols() > 1 ? 1 : 2;
      for (const auto& t : all_terms(c, depth)) {
        int e = eval_term(alg, t);
        for (ArrowId d : cat.into(t.sort())) CHECK(alg.carrier().act(d, e) == eval_term(alg, boundary(*c, d, t)));
      }
    }
  }

  TEST_CASE("the action is associative") {
    // eval o mu = eval o Term(eval) on terms whose variables are terms
    std::mt19937 rng(5);
    std::vector<Algebra> algebras{fx::pathcat()};
    while (algebras.size() < 5)
      if (auto a = oracle::random_comp_algebra(rng)) algebras.push_back(*a);
    for (const auto& alg : algebras) {
      TermPresheaf tp = term_presheaf(alg.carrier_computad(), 1);
      auto outer = Computad::free(tp.presheaf, alg.signature_ptr());
      std::vector<std::vector<int>> env(tp.terms.size());
      for (std::size_t s = 0; s < tp.terms.size(); ++s)
        for (const auto& t : tp.terms[s]) env[s].push_back(eval_term(alg, t));
      for (const auto& t : all_terms(outer, 1)) CHECK(eval_term(alg, mult(tp, t)) == eval_with(alg, t, env));
    }
  }

  TEST_CASE("universal property: morphisms out of a free algebra") {
    Algebra p = fx::pathcat();
    auto w = fx::walk2();
    Algebra fw = free_algebra(w, 1);
    CHECK(algebra_morphism_count(fw, p) == 10);
    CHECK(oracle::assignment_count(w, p) == 10);

    std::mt19937 rng(2024);
    int checked = 0, nontrivial = 0;
    while (checked < 20) {
      auto c = random_small_computad(rng);
      auto a = oracle::random_comp_algebra(rng);
      if (!a) continue;
      Algebra fc = free_algebra(c, 1);
      const long morphisms = algebra_morphism_count(fc, *a);
      CHECK(morphisms == oracle::assignment_count(c, *a));
      nontrivial += morphisms > 1;
      // each morphism is the extension of its restriction to generators
      for (const auto& m : enumerate_hom(fc.carrier(), a->carrier())) {
        if (check_algebra_morphism(fc, *a, m)) continue;
        std::vector<std::vector<int>> gens(2);
        for (SortId s = 0; s < 2; ++s)
          for (int g = 0; g < c->num_generators(s); ++g)
            gens[s].push_back(m(s, fc.terms()->index.at(Term::var(s, g)).index));
        auto ext = morphism_from_generators(c, *a, gens);
        for (SortId s = 0; s < 2; ++s)
          for (int k = 0; k < fc.carrier().num_cells(s); ++k) CHECK(m(s, k) == ext(fc.terms()->terms[s][k]));
      }
      ++checked;
    }
    CHECK(nontrivial >= 10);
  }
}
