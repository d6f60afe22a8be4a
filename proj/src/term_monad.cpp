#include "computads/term_monad.hpp"

#include <algorithm>

#include "computads/detail/families.hpp"

namespace cptd {

void for_each_arg_family(const Computad& c, int symbol, int forced_bound,
                         const std::function<const std::vector<Term>&(SortId)>& candidates,
                         const std::function<bool(const std::vector<Term>&)>& visit) {
  const auto& f = c.signature().symbol(symbol);
  detail::search_families<Term>(
      f.arity, forced_bound, [&](ArrowId d, const Term& t) { return boundary(c, d, t); },
      [](const Term& t) { return t.depth(); }, candidates, visit);
}

const std::vector<Term>& TermEnumerator::up_to(SortId s, int d) {
  while (static_cast<int>(levels_.size()) <= d) compute(static_cast<int>(levels_.size()));
  return levels_[d].at(s);
}

void TermEnumerator::compute(int d) {
  const Computad& c = *c_;
  const auto& cat = c.base();
  std::vector<std::vector<Term>> level(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    auto& out = level[s];
    for (int g = 0; g < c.num_generators(s); ++g) out.push_back(Term::var(s, g));
    if (d == 0) continue;
    const auto& prev = levels_[d - 1];
    auto [lo, hi] = c.signature().symbols_of(s);
    for (int f = lo; f < hi; ++f) {
      for_each_arg_family(
          c, f, d - 1, [&](SortId j) -> const std::vector<Term>& { return prev[j]; },
          [&](const std::vector<Term>& args) {
            out.push_back(Term::app(s, f, args));
            return true;
          });
    }
    std::sort(out.begin(), out.end());
  }
  levels_.push_back(std::move(level));
}

std::vector<Term> enumerate_terms(const ComputadPtr& c, SortId s, int d) {
  TermEnumerator e(c);
  return e.up_to(s, d);
}

CellRef TermPresheaf::cell_of(const Term& t) const {
  auto it = index.find(t);
  if (it == index.end()) fail(ErrorKind::DepthExceeded, "term lies outside the depth-" + std::to_string(depth) +
                                                            " truncation");
  return it->second;
}

TermPresheaf term_presheaf(const ComputadPtr& c, int d) {
  const auto& cat = c->base();
  TermEnumerator e(c);
  std::vector<std::vector<Term>> terms(cat.num_sorts());
  std::unordered_map<Term, int> pos;
  std::vector<std::vector<std::string>> names(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    terms[s] = e.up_to(s, d);
    for (std::size_t k = 0; k < terms[s].size(); ++k) {
      pos.emplace(terms[s][k], static_cast<int>(k));
      names[s].push_back(render(*c, terms[s][k]));
    }
  }
  std::vector<std::vector<int>> action(cat.num_arrows());
  for (ArrowId a = 0; a < cat.num_arrows(); ++a) {
    if (cat.arrow(a).identity) continue;
    for (const auto& t : terms[cat.arrow(a).dst]) {
      auto it = pos.find(boundary(*c, a, t));
      if (it == pos.end())
        fail(ErrorKind::DepthExceeded, "a face of " + render(*c, t) + " has depth above " + std::to_string(d));
      action[a].push_back(it->second);
    }
  }
  TermPresheaf tp;
  tp.over = c;
  tp.depth = d;
  tp.presheaf = Presheaf::from_tables(c->signature().base_ptr(), names, std::move(action));
  tp.terms.resize(cat.num_sorts());
  for (SortId s = 0; s < cat.num_sorts(); ++s) {
    tp.terms[s].resize(terms[s].size());
    for (std::size_t k = 0; k < terms[s].size(); ++k) {
      CellRef r = tp.presheaf.cell(names[s][k]);
      tp.terms[s][r.index] = terms[s][k];
      tp.index.emplace(terms[s][k], r);
    }
  }
  return tp;
}

std::vector<std::vector<Term>> unit(const Presheaf& x) {
  std::vector<std::vector<Term>> out(x.base().num_sorts());
  for (SortId s = 0; s < x.base().num_sorts(); ++s)
    for (int c = 0; c < x.num_cells(s); ++c) out[s].push_back(Term::var(s, c));
  return out;
}

ComputadMorphism counit(const TermPresheaf& tp) {
  auto src = Computad::free(tp.presheaf, tp.over->signature_ptr());
  return make_morphism(src, tp.over, tp.terms);
}

Term mult(const TermPresheaf& tp, const Term& t) {
  return substitute(t, [&](SortId s, int g) { return tp.terms.at(s).at(g); });
}

ComputadMorphism transpose(const Presheaf& x, const ComputadPtr& c, std::vector<std::vector<Term>> family) {
  return make_morphism(Computad::free(x, c->signature_ptr()), c, std::move(family));
}

std::vector<std::vector<Term>> untranspose(const ComputadMorphism& m) { return m.assign; }

ComputadMorphism free_map(const ComputadPtr& cx, const ComputadPtr& cy, const PresheafMorphism& m) {
  auto r = var_morphism(cx, cy, m.components);
  check_morphism(r);
  return r;
}

ComputadPtr representable_computad(const SignaturePtr& sig, SortId s) {
  return Computad::free(representable(sig->base_ptr(), s), sig);
}

ComputadPtr boundary_computad(const SignaturePtr& sig, SortId s) {
  return Computad::free(boundary_representable(sig->base_ptr(), s), sig);
}

ComputadMorphism term_classifier(const ComputadPtr& c, const Term& t) {
  const auto& cat = c->base();
  auto d = representable_computad(c->signature_ptr(), t.sort());
  std::vector<std::vector<Term>> assign(cat.num_sorts());
  for (SortId j = 0; j < cat.num_sorts(); ++j)
    for (int g = 0; g < d->num_generators(j); ++g) {
      const std::string& name = d->generator_name(j, g);
      ArrowId a = name == kTopCell ? cat.identity(t.sort()) : cat.arrow_index(name);
      assign[j].push_back(boundary(*c, a, t));
    }
  return make_morphism(d, c, std::move(assign));
}

}  // namespace cptd
