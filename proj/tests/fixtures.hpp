#pragma once

#include <cctype>

// Shared small fixtures: the walking arrow, the composition signature and a
// few computads over it.

#include "computads/algebra.hpp"
#include "computads/computad.hpp"
#include "computads/examples.hpp"
#include "computads/term_monad.hpp"

namespace fx {

using namespace cptd;

// Sorts o (dim 0) and a (dim 1), faces s, t: o -> a.
inline CategoryPtr arrow_category() {
  static CategoryPtr c = DirectCategory::create({{"o", 0}, {"a", 1}}, {{"s", "o", "a"}, {"t", "o", "a"}}, {});
  return c;
}

// Two composable arrows f: x -> y, g: y -> z.
inline Presheaf b_arrow() {
  return Presheaf::create(arrow_category(), {{"o", {"x", "y", "z"}}, {"a", {"f", "g"}}},
                          {{"s", "f", "x"}, {"t", "f", "y"}, {"s", "g", "y"}, {"t", "g", "z"}});
}

// comp of sort a with arity b_arrow, source var x, target var z.
inline SignaturePtr sigma_comp() {
  static SignaturePtr s = Signature::create(
      arrow_category(), {{"comp", "a", b_arrow(), {{"s", RawTerm::make_var("x")}, {"t", RawTerm::make_var("z")}}}});
  return s;
}

inline SignaturePtr sigma_empty_arrow() {
  static SignaturePtr s = Signature::empty(arrow_category());
  return s;
}

// p --u--> q --v--> r
inline ComputadPtr walk2(SignaturePtr sig = sigma_comp()) {
  return Computad::create(sig, {{"o", {"p", "q", "r"}}, {"a", {"u", "v"}}},
                          {{"u", "s", RawTerm::make_var("p")},
                           {"u", "t", RawTerm::make_var("q")},
                           {"v", "s", RawTerm::make_var("q")},
                           {"v", "t", RawTerm::make_var("r")}});
}

inline RawTerm raw_comp(RawTerm f, RawTerm g) {
  return RawTerm::make_app("comp", {{"f", std::move(f)}, {"g", std::move(g)}});
}

inline Term comp_uv(const ComputadPtr& w) {
  return resolve_term(*w, raw_comp(RawTerm::make_var("u"), RawTerm::make_var("v")));
}

// A single arrow generator with distinct endpoints.
inline ComputadPtr disk_a(SignaturePtr sig = sigma_comp()) {
  return representable_computad(sig, sig->base().sort_index("a"));
}

// Path of length n: objects o0..on, arrows e1..en.
inline ComputadPtr path(int n, SignaturePtr sig = sigma_comp()) {
  std::vector<std::string> objs, arrows;
  std::vector<GluingDecl> glue;
  for (int k = 0; k <= n; ++k) objs.push_back("o" + std::to_string(k));
  for (int k = 1; k <= n; ++k) {
    arrows.push_back("e" + std::to_string(k));
    glue.push_back({arrows.back(), "s", RawTerm::make_var(objs[k - 1])});
    glue.push_back({arrows.back(), "t", RawTerm::make_var(objs[k])});
  }
  return Computad::create(sig, {{"o", objs}, {"a", arrows}}, glue);
}


// Paths in the quiver A -> B -> C: the objects and the six paths of length <= 2.
inline Presheaf pathcat_carrier() {
  return Presheaf::create(arrow_category(), {{"o", {"A", "B", "C"}}, {"a", {"AB", "ABC", "BC", "idA", "idB", "idC"}}},
                          {{"s", "idA", "A"}, {"t", "idA", "A"}, {"s", "idB", "B"}, {"t", "idB", "B"},
                           {"s", "idC", "C"}, {"t", "idC", "C"}, {"s", "AB", "A"}, {"t", "AB", "B"},
                           {"s", "BC", "B"}, {"t", "BC", "C"}, {"s", "ABC", "A"}, {"t", "ABC", "C"}});
}

// The a-cell of x with the given endpoints, or -1.
inline int arrow_between(const Presheaf& x, int src, int dst) {
  const auto& cat = x.base();
  const SortId a = cat.sort_index("a");
  for (int c = 0; c < x.num_cells(a); ++c)
    if (x.act(cat.arrow_index("s"), c) == src && x.act(cat.arrow_index("t"), c) == dst) return c;
  return -1;
}

// Rows of comp on x: each composable pair goes to choose(source, target).
inline std::vector<TableRow> comp_rows(const Presheaf& x, const std::function<int(int, int)>& choose) {
  std::vector<TableRow> rows;
  for (const auto& m : enumerate_hom(b_arrow(), x)) {
    auto in = m.flatten();
    // flat order: x, y, z, f, g
    rows.push_back({in, choose(in[0], in[2])});
  }
  return rows;
}

// PATHCAT: comp is path concatenation.
inline Algebra pathcat() {
  Presheaf x = pathcat_carrier();
  return Algebra::from_tables(sigma_comp(), x, {comp_rows(x, [&](int s, int t) { return arrow_between(x, s, t); })});
}

// The discrete presheaf with cells 0..4 on each sort of a discrete base; the
// names carry a lowercased sort prefix when there are several sorts.
inline Presheaf z5_carrier(const CategoryPtr& base) {
  std::vector<std::pair<std::string, std::vector<std::string>>> cells;
  for (SortId s = 0; s < base->num_sorts(); ++s) {
    std::string prefix;
    if (base->num_sorts() > 1) prefix = std::string(1, static_cast<char>(std::tolower(base->sort(s).id[0])));
    std::vector<std::string> names;
    for (int k = 0; k < 5; ++k) names.push_back(prefix + std::to_string(k));
    cells.push_back({base->sort(s).id, names});
  }
  return Presheaf::create(base, cells, {});
}

// Z5 as an algebra for add, neg, zero.
inline Algebra z5_group() {
  auto sig = examples::group_signature();
  return Algebra::from_functions(sig, z5_carrier(sig->base_ptr()),
                                 {[](const AlgebraInput& in) { return (in[0] + in[1]) % 5; },
                                  [](const AlgebraInput& in) { return (5 - in[0]) % 5; },
                                  [](const AlgebraInput&) { return 0; }});
}

// Z5 as a module over itself.
inline Algebra z5_module() {
  auto sig = examples::module_signature();
  auto add = [](const AlgebraInput& in) { return (in[0] + in[1]) % 5; };
  auto mul = [](const AlgebraInput& in) { return (in[0] * in[1]) % 5; };
  auto neg = [](const AlgebraInput& in) { return (5 - in[0]) % 5; };
  auto one = [](const AlgebraInput&) { return 1; };
  auto zero = [](const AlgebraInput&) { return 0; };
  // symbols in (sort, id) order: add_R mul_R neg_R one_R zero_R add_V mul_V neg_V zero_V
  return Algebra::from_functions(sig, z5_carrier(sig->base_ptr()), {add, mul, neg, one, zero, add, mul, neg, zero});
}

}  // namespace fx
