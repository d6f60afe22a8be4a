#pragma once

#include <unordered_map>
#include <vector>

#include "computads/computad.hpp"

namespace cptd {

// Depth-bounded term sets, computed level by level and cached.
class TermEnumerator {
 public:
  explicit TermEnumerator(ComputadPtr c) : c_(std::move(c)) {}

  // Terms of sort s and depth <= d, canonically ordered.
  const std::vector<Term>& up_to(SortId s, int d);
  const ComputadPtr& computad() const { return c_; }

 private:
  void compute(int d);

  ComputadPtr c_;
  std::vector<std::vector<std::vector<Term>>> levels_;
};

std::vector<Term> enumerate_terms(const ComputadPtr& c, SortId s, int d);

// Compatible argument families for symbol f whose free choices come from
// `candidates` and whose forced entries have depth <= forced_bound.
void for_each_arg_family(const Computad& c, int symbol, int forced_bound,
                         const std::function<const std::vector<Term>&(SortId)>& candidates,
                         const std::function<bool(const std::vector<Term>&)>& visit);

// The presheaf Term(C) restricted to depth <= d, with cells named by rendering.
struct TermPresheaf {
  ComputadPtr over;
  int depth = 0;
  Presheaf presheaf;
  std::vector<std::vector<Term>> terms;
  std::unordered_map<Term, CellRef> index;

  CellRef cell_of(const Term& t) const;
};

// Throws DepthExceeded when the truncated term set is not closed under faces.
TermPresheaf term_presheaf(const ComputadPtr& c, int d);

// eta_X: x |-> var x, as a family of terms over Cptd(X).
std::vector<std::vector<Term>> unit(const Presheaf& x);
// epsilon_C: Cptd(Term C) -> C, restricted to the given truncation.
ComputadMorphism counit(const TermPresheaf& tp);
// mu_C = Term(epsilon_C): flattens a term whose variables are terms of C.
Term mult(const TermPresheaf& tp, const Term& t);

// A presheaf morphism X -> Term(C), given as terms, corresponds to Cptd(X) -> C.
ComputadMorphism transpose(const Presheaf& x, const ComputadPtr& c, std::vector<std::vector<Term>> family);
std::vector<std::vector<Term>> untranspose(const ComputadMorphism& m);
// Cptd applied to a presheaf morphism; always variable-to-variable.
ComputadMorphism free_map(const ComputadPtr& cx, const ComputadPtr& cy, const PresheafMorphism& m);

// The representable computad on sort s and its boundary.
ComputadPtr representable_computad(const SignaturePtr& sig, SortId s);
ComputadPtr boundary_computad(const SignaturePtr& sig, SortId s);
// The morphism from the representable computad classifying t: the top cell
// goes to t and each face cell d to d^*(t).
ComputadMorphism term_classifier(const ComputadPtr& c, const Term& t);

}  // namespace cptd
