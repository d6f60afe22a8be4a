#include <doctest.h>

#include <random>

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

}  // namespace

TEST_SUITE("category") {
  TEST_CASE("walking arrow") {
    auto c = fx::arrow_category();
    CHECK(c->num_sorts() == 2);
    CHECK(c->into(c->sort_index("a")).size() == 2);
    CHECK(c->into(c->sort_index("o")).empty());
    CHECK(c->max_dim() == 1);
  }

  TEST_CASE("directness is enforced") {
    CHECK(kind_of([] { DirectCategory::create({{"o", 0}, {"a", 1}}, {{"bad", "a", "o"}}, {}); }) ==
          ErrorKind::DimensionViolation);
    CHECK(kind_of([] { DirectCategory::create({{"o", 0}, {"b", 0}}, {{"bad", "o", "b"}}, {}); }) ==
          ErrorKind::DimensionViolation);
    CHECK(kind_of([] { DirectCategory::create({{"o", 0}}, {{"f", "o", "z"}}, {}); }) == ErrorKind::UnknownSort);
  }

  TEST_CASE("composition table must be complete and well typed") {
    std::vector<SortDecl> sorts{{"0", 0}, {"1", 1}, {"2", 2}};
    std::vector<FaceDecl> faces{{"f", "0", "1"}, {"g", "1", "2"}, {"h", "0", "2"}};
    CHECK(kind_of([&] { DirectCategory::create(sorts, faces, {}); }) == ErrorKind::CompositionGap);
    CHECK(kind_of([&] { DirectCategory::create(sorts, faces, {{"g", "f", "h"}}); }) == ErrorKind::CompositionGap);
    auto ok = DirectCategory::create(sorts, faces, {{"f", "g", "h"}});
    CHECK(ok->compose(ok->arrow_index("g"), ok->arrow_index("f")) == ok->arrow_index("h"));
  }

  TEST_CASE("associativity failures are reported") {
    // Two maps 0 -> 1, one map 1 -> 2, one map 2 -> 3 and two maps 0 -> 3 so
    // that the two bracketings can disagree.
    std::vector<SortDecl> sorts{{"0", 0}, {"1", 1}, {"2", 2}, {"3", 3}};
    std::vector<FaceDecl> faces{{"a", "0", "1"}, {"b", "1", "2"}, {"c", "2", "3"}, {"ab", "0", "2"},
                                {"bc", "1", "3"}, {"x", "0", "3"}, {"y", "0", "3"}};
    std::vector<ComposeDecl> good{{"a", "b", "ab"}, {"b", "c", "bc"}, {"ab", "c", "x"}, {"a", "bc", "x"}};
    CHECK_NOTHROW(DirectCategory::create(sorts, faces, good));
    std::vector<ComposeDecl> bad{{"a", "b", "ab"}, {"b", "c", "bc"}, {"ab", "c", "x"}, {"a", "bc", "y"}};
    CHECK(kind_of([&] { DirectCategory::create(sorts, faces, bad); }) == ErrorKind::AssociativityFailure);
  }

  TEST_CASE("associativity holds on every composable triple of the builders") {
    for (auto c : {examples::delta_plus(3), examples::cube_category(2), examples::globe_category(3)})
      for (ArrowId f = 0; f < c->num_arrows(); ++f)
        for (ArrowId h = 0; h < c->num_arrows(); ++h) {
          if (c->arrow(h).src != c->arrow(f).dst) continue;
          for (ArrowId k = 0; k < c->num_arrows(); ++k) {
            if (c->arrow(k).src != c->arrow(h).dst) continue;
            CHECK(c->compose(k, c->compose(h, f)) == c->compose(c->compose(k, h), f));
          }
        }
  }

  TEST_CASE("truncation") {
    auto d = examples::delta_plus(2);
    auto t = d->truncate(1);
    CHECK(t->num_sorts() == 2);
    CHECK(t->num_arrows() - t->num_sorts() == 2);
    CHECK(t->find_arrow(examples::delta_face(1, 0)));
    CHECK(t->find_arrow(examples::delta_face(1, 1)));
    CHECK(t->truncate(1)->equals(*t));
    CHECK(d->truncate(2)->equals(*d));
    CHECK(t->is_truncation_of(*d));
    auto a0 = fx::arrow_category()->truncate(0);
    CHECK(a0->num_sorts() == 1);
    CHECK(a0->num_arrows() == 1);
  }

  TEST_CASE("representables") {
    auto c = fx::arrow_category();
    Presheaf da = representable(c, c->sort_index("a"));
    CHECK(da.cells(c->sort_index("a")) == std::vector<std::string>{kTopCell});
    CHECK(da.cells(c->sort_index("o")) == std::vector<std::string>{"s", "t"});
    CHECK(representable(c, c->sort_index("o")).total_cells() == 1);
    Presheaf bd = boundary_representable(c, c->sort_index("a"));
    CHECK(bd.num_cells(c->sort_index("a")) == 0);
    CHECK(bd.num_cells(c->sort_index("o")) == 2);
    CHECK(boundary_representable(c, c->sort_index("o")).total_cells() == 0);
    auto d = examples::delta_plus(2);
    Presheaf d2 = representable(d, 2);
    CHECK(d2.num_cells(0) == 3);
    CHECK(d2.num_cells(1) == 3);
    CHECK(d2.num_cells(2) == 1);
    Presheaf b2 = boundary_representable(d, 2);
    CHECK(b2.num_cells(2) == 0);
    CHECK(b2.num_cells(1) == 3);
    CHECK(kind_of([&] { d->sort_index("[7]"); }) == ErrorKind::UnknownSort);
  }

  TEST_CASE("boundary representable is a sub-presheaf") {
    auto d = examples::delta_plus(3);
    for (SortId s = 0; s < d->num_sorts(); ++s) {
      Presheaf r = representable(d, s);
      Presheaf b = boundary_representable(d, s);
      PresheafMorphism inc;
      inc.components.resize(d->num_sorts());
      for (SortId j = 0; j < d->num_sorts(); ++j)
        for (int c = 0; c < b.num_cells(j); ++c) inc.components[j].push_back(r.cell(b.cell_name(j, c)).index);
      CHECK(is_natural(b, r, inc));
    }
  }
}

TEST_SUITE("presheaf") {
  TEST_CASE("arity of composition") {
    Presheaf b = fx::b_arrow();
    auto c = fx::arrow_category();
    CHECK(b.num_cells(c->sort_index("o")) == 3);
    CHECK(b.cell_name(0, b.act(c->arrow_index("t"), b.cell("f").index)) == "y");
    CHECK(empty_presheaf(c).total_cells() == 0);
  }

  TEST_CASE("missing and inconsistent actions") {
    auto c = fx::arrow_category();
    CHECK(kind_of([&] {
            Presheaf::create(c, {{"o", {"x", "y"}}, {"a", {"f"}}}, {{"t", "f", "y"}});
          }) == ErrorKind::MissingAction);
    CHECK(kind_of([&] {
            Presheaf::create(c, {{"o", {"x", "y"}}, {"a", {"f"}}},
                             {{"s", "f", "x"}, {"t", "f", "y"}, {"s", "f", "y"}});
          }) == ErrorKind::FunctorialityFailure);
    CHECK(kind_of([&] { Presheaf::create(c, {{"o", {"x"}}, {"a", {"x"}}}, {}); }) == ErrorKind::UnknownCell);
  }

  TEST_CASE("functoriality is checked on composites") {
    auto d = examples::delta_plus(2);
    // A triangle whose vertex action disagrees with the action through its edges.
    std::vector<std::vector<std::string>> cells{{"v0", "v1", "v2"}, {"e01", "e02", "e12"}, {"T"}};
    std::vector<std::vector<int>> action(d->num_arrows());
    auto set = [&](const std::string& face, std::vector<int> v) { action[d->arrow_index(face)] = std::move(v); };
    set("d1_0", {1, 2, 2});
    set("d1_1", {0, 0, 1});
    set("d2_0", {2});
    set("d2_1", {1});
    set("d2_2", {0});
    set("d2_01", {2});
    set("d2_02", {1});
    set("d2_12", {0});
    CHECK_NOTHROW(Presheaf::from_tables(d, cells, action));
    set("d2_12", {1});
    CHECK(kind_of([&] { Presheaf::from_tables(d, cells, action); }) == ErrorKind::FunctorialityFailure);
  }

  TEST_CASE("hom enumeration") {
    auto c = fx::arrow_category();
    Presheaf b = fx::b_arrow();
    Presheaf d_o = representable(c, c->sort_index("o"));
    CHECK(enumerate_hom(d_o, b).size() == 3);
    auto endo = enumerate_hom(b, b);
    CHECK(std::find(endo.begin(), endo.end(), identity_morphism(b)) != endo.end());
    auto d = examples::delta_plus(1);
    CHECK(enumerate_hom(examples::boundary_simplex(d, 1), examples::simplex(d, 1)).size() == 4);
    CHECK(std::is_sorted(endo.begin(), endo.end()));
  }

  TEST_CASE("hom enumeration agrees with brute force on random presheaves") {
    std::mt19937 rng(7);
    for (auto base : {fx::arrow_category(), examples::delta_plus(2)}) {
      for (int trial = 0; trial < 20; ++trial) {
        Presheaf x = oracle::random_presheaf(base, rng, 2);
        Presheaf y = oracle::random_presheaf(base, rng, 3);
        auto homs = enumerate_hom(x, y);
        CHECK(static_cast<long>(homs.size()) == oracle::hom_count(x, y));
        for (const auto& h : homs) CHECK(is_natural(x, y, h));
      }
    }
  }

  TEST_CASE("truncation and skeleton") {
    Presheaf b = fx::b_arrow();
    Presheaf t0 = b.truncate(0);
    CHECK(t0.base().num_sorts() == 1);
    CHECK(t0.cells(0) == std::vector<std::string>{"x", "y", "z"});
    Presheaf sk = t0.skeleton(fx::arrow_category());
    CHECK(sk.num_cells(1) == 0);
    CHECK(sk.truncate(0) == t0);
    std::mt19937 rng(11);
    auto d = examples::delta_plus(2);
    for (int trial = 0; trial < 20; ++trial) {
      Presheaf x = oracle::random_presheaf(d, rng, 2);
      for (int n = 0; n <= 2; ++n) {
        Presheaf t = x.truncate(n);
        CHECK(t.skeleton(d).truncate(n) == t);
        CHECK(t.truncate(n) == t);
        if (n > 0) CHECK(x.truncate(n).truncate(n - 1) == x.truncate(n - 1));
      }
    }
  }
}

TEST_SUITE("signature") {
  TEST_CASE("composition signature") {
    auto sig = fx::sigma_comp();
    REQUIRE(sig->num_symbols() == 1);
    const auto& comp = sig->symbol(0);
    CHECK(comp.id == "comp");
    CHECK(comp.boundary.size() == 2);
    for (const auto& t : comp.boundary) CHECK(t.sort() == sig->base().sort_index("o"));
  }

  TEST_CASE("ill-typed boundaries") {
    auto c = fx::arrow_category();
    CHECK(kind_of([&] {
            Signature::create(c, {{"comp", "a", fx::b_arrow(), {{"s", RawTerm::make_var("f")}, {"t", RawTerm::make_var("z")}}}});
          }) == ErrorKind::BoundaryIllTyped);
    CHECK(kind_of([&] {
            Signature::create(c, {{"comp", "a", fx::b_arrow(), {{"t", RawTerm::make_var("z")}}}});
          }) == ErrorKind::BoundaryIllTyped);
    CHECK(kind_of([&] {
            Signature::create(c, {{"k", "o", fx::b_arrow(), {}}});
          }) == ErrorKind::ArityDimensionViolation);
    CHECK(kind_of([&] { Signature::create(c, {{"k", "q", empty_presheaf(c), {}}}); }) == ErrorKind::UnknownSort);
  }

  TEST_CASE("cocycle failures") {
    // A 2-dimensional symbol whose two faces disagree at a shared vertex.
    auto d = examples::delta_plus(2);
    Presheaf arity = examples::boundary_simplex(d, 2);
    auto v = [](const std::string& n) { return RawTerm::make_var(n); };
    SymbolDecl ok{"k", "[2]", arity, {{"d2_0", v("d2_0")}, {"d2_1", v("d2_1")}, {"d2_2", v("d2_2")}}};
    CHECK_NOTHROW(Signature::create(d, {ok}));
    SymbolDecl bad{"k", "[2]", arity, {{"d2_0", v("d2_0")}, {"d2_1", v("d2_0")}, {"d2_2", v("d2_2")}}};
    CHECK(kind_of([&] { Signature::create(d, {bad}); }) == ErrorKind::CocycleFailure);
  }

  TEST_CASE("restriction") {
    CHECK(fx::sigma_comp()->restrict(0)->num_symbols() == 0);
    auto kan = examples::sigma_kan(2);
    auto r1 = kan->restrict(1);
    for (const auto& f : r1->symbols()) CHECK(r1->base().dim(f.sort) <= 1);
    CHECK(r1->find_symbol(examples::kan_filler_symbol(0, 1)));
    CHECK(r1->find_symbol(examples::kan_face_symbol(0, 1)));
    CHECK(!r1->find_symbol(examples::kan_filler_symbol(0, 2)));
    CHECK(r1->restrict(0)->num_symbols() == kan->restrict(0)->num_symbols());
    CHECK(kan->restrict(2)->restrict(1)->num_symbols() == r1->num_symbols());
  }

  TEST_CASE("stratified validation matches layered validation") {
    auto kan = examples::sigma_kan(2);
    for (int n = 0; n <= 2; ++n) {
      auto r = kan->restrict(n);
      for (int f = 0; f < r->num_symbols(); ++f) {
        auto ctx = Computad::free(r->symbol(f).arity, r);
        for (const auto& t : r->symbol(f).boundary) CHECK_NOTHROW(check_term(*ctx, t));
      }
    }
  }
}
