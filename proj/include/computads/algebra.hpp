#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "computads/computad.hpp"
#include "computads/term_monad.hpp"

namespace cptd {

// An input to f is a morphism B_f -> X, flattened: entry k is the carrier cell
// (index within its sort) assigned to the k-th arity cell in flat order.
using AlgebraInput = std::vector<int>;
// Returns the value cell of sort(f), or -1 when the value is not available
// (only free algebras truncated at a depth do this).
using Interpretation = std::function<int(const AlgebraInput&)>;

struct TableRow {
  AlgebraInput input;
  int value = 0;
};

class Algebra {
 public:
  Algebra() = default;

  // Tables must cover every morphism B_f -> X; validated against the boundary condition.
  static Algebra from_tables(SignaturePtr sig, Presheaf carrier, const std::vector<std::vector<TableRow>>& tables);
  // Interpretations given as functions; `validate` checks the boundary
  // condition on every input.
  static Algebra from_functions(SignaturePtr sig, Presheaf carrier, std::vector<Interpretation> fns,
                                bool validate = true);

  const SignaturePtr& signature_ptr() const { return sig_; }
  const Signature& signature() const { return *sig_; }
  const Presheaf& carrier() const { return carrier_; }
  // The free computad on the carrier, over which terms are evaluated.
  const ComputadPtr& carrier_computad() const { return free_; }

  // Throws DepthExceeded when the value is unavailable.
  int interpret(int symbol, const AlgebraInput& input) const;
  std::optional<int> try_interpret(int symbol, const AlgebraInput& input) const;

  // Present for free algebras: the truncated term presheaf forming the carrier.
  const std::shared_ptr<const TermPresheaf>& terms() const { return terms_; }

  // Every morphism B_f -> X, flattened, in canonical order.
  std::vector<AlgebraInput> inputs(int symbol) const;

 private:
  friend Algebra free_algebra(const ComputadPtr& c, int depth);

  SignaturePtr sig_;
  Presheaf carrier_;
  ComputadPtr free_;
  std::vector<Interpretation> fns_;
  std::shared_ptr<const TermPresheaf> terms_;
};

// Evaluates t over the free computad on the carrier.
int eval_term(const Algebra& a, const Term& t);
// Evaluates t over any computad whose generators are sent to carrier cells by env.
int eval_with(const Algebra& a, const Term& t, const std::vector<std::vector<int>>& env);

void check_boundary_condition(const Algebra& a);

// Term(C) truncated at `depth`; f[tau] evaluates to the term f[tau] when it
// lies inside the truncation.
Algebra free_algebra(const ComputadPtr& c, int depth);

// The unique extension of a generator assignment C -> A to all terms.
struct GeneratorExtension {
  ComputadPtr src;
  Algebra target;
  std::vector<std::vector<int>> assign;

  int operator()(const Term& t) const { return eval_with(target, t, assign); }
};

GeneratorExtension morphism_from_generators(const ComputadPtr& c, const Algebra& a,
                                            std::vector<std::vector<int>> assign);

struct AlgebraCounterexample {
  int symbol = -1;
  AlgebraInput input;
};

// Checks sigma o f^X = f^Y(sigma o -) on every input whose value is available
// on both sides. Returns the first violation.
std::optional<AlgebraCounterexample> check_algebra_morphism(const Algebra& x, const Algebra& y,
                                                            const PresheafMorphism& sigma);

}  // namespace cptd
