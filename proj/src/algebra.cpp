#include "computads/algebra.hpp"

#include <map>

#include "computads/error.hpp"

namespace cptd {

namespace {

std::vector<std::vector<int>> unflatten(const Presheaf& shape, const AlgebraInput& input) {
  std::vector<std::vector<int>> out(shape.base().num_sorts());
  for (SortId s = 0; s < shape.base().num_sorts(); ++s)
    for (int c = 0; c < shape.num_cells(s); ++c) out[s].push_back(input.at(shape.flat(s, c)));
  return out;
}

bool same_symbols(const Signature& a, const Signature& b) {
  if (&a == &b) return true;
  if (a.num_symbols() != b.num_symbols() || !a.base().equals(b.base())) return false;
  for (int f = 0; f < a.num_symbols(); ++f)
    if (a.symbol(f).id != b.symbol(f).id) return false;
  return true;
}

}  // namespace

Algebra Algebra::from_functions(SignaturePtr sig, Presheaf carrier, std::vector<Interpretation> fns, bool validate) {
  if (!bases_compatible(carrier.base(), sig->base()))
    fail(ErrorKind::BaseMismatch, "carrier and signature bases differ");
  if (static_cast<int>(fns.size()) != sig->num_symbols())
    fail(ErrorKind::PartialTable, "expected one interpretation per symbol");
  Algebra a;
  a.carrier_ = carrier.base().equals(sig->base()) ? std::move(carrier) : carrier.rebase(sig->base_ptr());
  a.free_ = Computad::free(a.carrier_, sig);
  a.sig_ = std::move(sig);
  a.fns_ = std::move(fns);
  if (validate) check_boundary_condition(a);
  return a;
}

Algebra Algebra::from_tables(SignaturePtr sig, Presheaf carrier, const std::vector<std::vector<TableRow>>& tables) {
  if (static_cast<int>(tables.size()) != sig->num_symbols())
    fail(ErrorKind::PartialTable, "expected one table per symbol");
  std::vector<Interpretation> fns;
  for (int f = 0; f < sig->num_symbols(); ++f) {
    auto table = std::make_shared<std::map<AlgebraInput, int>>();
    const auto& sym = sig->symbol(f);
    for (const auto& row : tables[f]) {
      if (row.value < 0 || row.value >= carrier.num_cells(sym.sort))
        fail(ErrorKind::PartialTable, "symbol " + sym.id + ": value outside the carrier");
      auto [it, fresh] = table->emplace(row.input, row.value);
      if (!fresh && it->second != row.value)
        fail(ErrorKind::PartialTable, "symbol " + sym.id + ": two values for the same input");
    }
    fns.push_back([table](const AlgebraInput& in) {
      auto it = table->find(in);
      return it == table->end() ? -1 : it->second;
    });
  }
  Algebra a = from_functions(std::move(sig), std::move(carrier), std::move(fns), false);
  for (int f = 0; f < a.signature().num_symbols(); ++f) {
    auto all = a.inputs(f);
    std::size_t rows = 0;
    for (const auto& in : all) {
      if (a.fns_[f](in) < 0)
        fail(ErrorKind::PartialTable, "symbol " + a.signature().symbol(f).id + " has no value on some input");
      ++rows;
    }
    std::map<AlgebraInput, int> distinct;
    for (const auto& row : tables[f]) distinct.emplace(row.input, row.value);
    if (distinct.size() != rows)
      fail(ErrorKind::PartialTable, "symbol " + a.signature().symbol(f).id + " has rows that are not morphisms");
  }
  check_boundary_condition(a);
  return a;
}

std::optional<int> Algebra::try_interpret(int symbol, const AlgebraInput& input) const {
  int v = fns_.at(symbol)(input);
  if (v < 0) return std::nullopt;
  return v;
}

int Algebra::interpret(int symbol, const AlgebraInput& input) const {
  auto v = try_interpret(symbol, input);
  if (!v) fail(ErrorKind::DepthExceeded, "value of " + sig_->symbol(symbol).id + " lies outside the truncation");
  return *v;
}

std::vector<AlgebraInput> Algebra::inputs(int symbol) const {
  std::vector<AlgebraInput> out;
  for_each_hom(sig_->symbol(symbol).arity, carrier_, [&](const PresheafMorphism& m) {
    out.push_back(m.flatten());
    return true;
  });
  return out;
}

int eval_with(const Algebra& a, const Term& t, const std::vector<std::vector<int>>& env) {
  if (t.is_var()) {
    if (t.sort() >= static_cast<int>(env.size()) || t.generator() >= static_cast<int>(env[t.sort()].size()))
      fail(ErrorKind::SortMismatch, "variable outside the evaluation environment");
    return env[t.sort()][t.generator()];
  }
  AlgebraInput in;
  in.reserve(t.args().size());
  for (const auto& arg : t.args()) in.push_back(eval_with(a, arg, env));
  return a.interpret(t.symbol(), in);
}

int eval_term(const Algebra& a, const Term& t) {
  const Presheaf& x = a.carrier();
  if (t.is_var()) {
    if (t.generator() >= x.num_cells(t.sort())) fail(ErrorKind::SortMismatch, "variable outside the carrier");
    return t.generator();
  }
  std::vector<std::vector<int>> env(x.base().num_sorts());
  for (SortId s = 0; s < x.base().num_sorts(); ++s)
    for (int c = 0; c < x.num_cells(s); ++c) env[s].push_back(c);
  return eval_with(a, t, env);
}

void check_boundary_condition(const Algebra& a) {
  const auto& sig = a.signature();
  const auto& cat = sig.base();
  for (int f = 0; f < sig.num_symbols(); ++f) {
    const auto& sym = sig.symbol(f);
    for (const auto& in : a.inputs(f)) {
      auto v = a.try_interpret(f, in);
      if (!v) continue;
      if (*v < 0 || *v >= a.carrier().num_cells(sym.sort))
        fail(ErrorKind::PartialTable, "symbol " + sym.id + ": value outside the carrier");
      auto env = unflatten(sym.arity, in);
      for (ArrowId d : cat.into(sym.sort)) {
        int expected;
        try {
          expected = eval_with(a, sym.boundary[cat.face_position(d)], env);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::DepthExceeded) continue;
          throw;
        }
        if (a.carrier().act(d, *v) != expected)
          fail(ErrorKind::BoundaryConditionFailure,
               "symbol " + sym.id + ": the face " + cat.arrow(d).id + " of a value is " +
                   a.carrier().cell_name(cat.arrow(d).src, a.carrier().act(d, *v)) +
                   " but the boundary term evaluates to " + a.carrier().cell_name(cat.arrow(d).src, expected));
      }
    }
  }
}

Algebra free_algebra(const ComputadPtr& c, int depth) {
  auto tp = std::make_shared<const TermPresheaf>(term_presheaf(c, depth));
  const auto& sig = c->signature();
  std::vector<Interpretation> fns;
  for (int f = 0; f < sig.num_symbols(); ++f) {
    const FunctionSymbol* sym = &sig.symbol(f);
    fns.push_back([tp, f, sym](const AlgebraInput& in) {
      std::vector<Term> args;
      args.reserve(in.size());
      for (std::size_t k = 0; k < in.size(); ++k)
        args.push_back(tp->terms[sym->arity.unflat(static_cast<int>(k)).sort][in[k]]);
      auto it = tp->index.find(Term::app(sym->sort, f, std::move(args)));
      return it == tp->index.end() ? -1 : it->second.index;
    });
  }
  Algebra a = Algebra::from_functions(c->signature_ptr(), tp->presheaf, std::move(fns), false);
  a.terms_ = tp;
  return a;
}

GeneratorExtension morphism_from_generators(const ComputadPtr& c, const Algebra& a,
                                            std::vector<std::vector<int>> assign) {
  const auto& cat = c->base();
  if (!bases_compatible(cat, a.carrier().base())) fail(ErrorKind::BaseMismatch, "computad and algebra bases differ");
  assign.resize(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    if (static_cast<int>(assign[s].size()) != c->num_generators(s))
      fail(ErrorKind::UnknownGenerator, "assignment does not cover the generators of sort " + cat.sort(s).id);
    for (int x : assign[s])
      if (x < 0 || x >= a.carrier().num_cells(s))
        fail(ErrorKind::UnknownCell, "assignment leaves the carrier at sort " + cat.sort(s).id);
  }
  for (SortId s = 0; s < cat.num_sorts(); ++s)
    for (int g = 0; g < c->num_generators(s); ++g)
      for (ArrowId d : cat.into(s))
        if (a.carrier().act(d, assign[s][g]) != eval_with(a, c->gluing(s, g, d), assign))
          fail(ErrorKind::BoundaryConditionFailure, "generator " + c->generator_name(s, g) + " on face " +
                                                        cat.arrow(d).id + " is not sent compatibly");
  return GeneratorExtension{c, a, std::move(assign)};
}

std::optional<AlgebraCounterexample> check_algebra_morphism(const Algebra& x, const Algebra& y,
                                                            const PresheafMorphism& sigma) {
  if (!x.carrier().base().equals(y.carrier().base()) || !same_symbols(x.signature(), y.signature()))
    fail(ErrorKind::BaseMismatch, "algebras over different signatures");
  if (!is_natural(x.carrier(), y.carrier(), sigma))
    fail(ErrorKind::NotCompatible, "the carrier map is not a presheaf morphism");
  const auto& sig = x.signature();
  for (int f = 0; f < sig.num_symbols(); ++f) {
    const auto& sym = sig.symbol(f);
    for (const auto& in : x.inputs(f)) {
      auto vx = x.try_interpret(f, in);
      if (!vx) continue;
      AlgebraInput mapped(in.size());
      for (std::size_t k = 0; k < in.size(); ++k) mapped[k] = sigma(sym.arity.unflat(static_cast<int>(k)).sort, in[k]);
      auto vy = y.try_interpret(f, mapped);
      if (!vy) continue;
      if (sigma(sym.sort, *vx) != *vy) return AlgebraCounterexample{f, in};
    }
  }
  return std::nullopt;
}

}  // namespace cptd
