#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "computads/error.hpp"
#include "computads/presheaf.hpp"
#include "computads/signature.hpp"
#include "computads/term.hpp"

namespace cptd {

struct GluingDecl {
  std::string gen;
  std::string face;
  RawTerm term;
};

struct GenRef {
  SortId sort = 0;
  int index = 0;
  friend bool operator==(const GenRef&, const GenRef&) = default;
  friend auto operator<=>(const GenRef&, const GenRef&) = default;
};

class Computad;
using ComputadPtr = std::shared_ptr<const Computad>;

// Generators are ordered lexicographically within each sort and their names
// are unique across sorts.
class Computad {
 public:
  // Gluing may be given on generating faces only; composite faces are derived.
  static ComputadPtr create(SignaturePtr sig, const std::vector<std::pair<std::string, std::vector<std::string>>>& gens,
                            const std::vector<GluingDecl>& gluing);
  // Index-level constructor: gluing[s][g][p] is the term on face into(s)[p].
  // Generator lists need not be sorted; terms refer to the given order.
  static ComputadPtr from_terms(SignaturePtr sig, std::vector<std::vector<std::string>> gens,
                                std::vector<std::vector<std::vector<Term>>> gluing);
  static ComputadPtr empty(SignaturePtr sig);
  static ComputadPtr free(const Presheaf& x, SignaturePtr sig);

  const SignaturePtr& signature_ptr() const { return sig_; }
  const Signature& signature() const { return *sig_; }
  const DirectCategory& base() const { return sig_->base(); }

  int num_generators(SortId s) const {
    return s < static_cast<int>(gens_.size()) ? static_cast<int>(gens_[s].size()) : 0;
  }
  int total_generators() const;
  const std::string& generator_name(SortId s, int g) const { return gens_.at(s).at(g); }
  const std::string& generator_name(GenRef r) const { return generator_name(r.sort, r.index); }
  const std::vector<std::string>& generators(SortId s) const { return gens_.at(s); }
  std::optional<GenRef> find_generator(const std::string& name) const;
  GenRef generator(const std::string& name) const;
  const Term& gluing(SortId s, int g, ArrowId face) const;
  const std::vector<Term>& gluing_family(SortId s, int g) const { return gluing_.at(s).at(g); }
  const std::vector<std::vector<std::vector<Term>>>& gluing_table() const { return gluing_; }

  // Generators of dimension > n are dropped; the signature is kept.
  ComputadPtr drop_above(int n) const;

 private:
  Computad() = default;
  void index();

  SignaturePtr sig_;
  std::vector<std::vector<std::string>> gens_;
  std::vector<std::vector<std::vector<Term>>> gluing_;
  std::unordered_map<std::string, GenRef> index_;
};

// delta^*(t) for delta: j -> i and t of sort i.
Term boundary(const Computad& c, ArrowId face, const Term& t);
// Checks that t is a well-formed term over c.
void check_term(const Computad& c, const Term& t);
Term mk_var(const Computad& c, const std::string& gen);
Term mk_app(const Computad& c, int symbol, std::vector<Term> args);
Term resolve_term(const Computad& c, const RawTerm& raw);
RawTerm to_raw(const Computad& c, const Term& t);
std::string render(const Computad& c, const Term& t);

struct ComputadMorphism {
  ComputadPtr src;
  ComputadPtr dst;
  std::vector<std::vector<Term>> assign;

  const Term& operator()(SortId s, int g) const { return assign.at(s).at(g); }
};

// Checks sorts and the boundary condition; throws on failure.
void check_morphism(const ComputadMorphism& m);
ComputadMorphism make_morphism(ComputadPtr src, ComputadPtr dst, std::vector<std::vector<Term>> assign);
ComputadMorphism make_morphism(ComputadPtr src, ComputadPtr dst,
                               const std::vector<std::pair<std::string, RawTerm>>& assign);
ComputadMorphism identity_morphism(const ComputadPtr& c);
Term apply(const ComputadMorphism& m, const Term& t);
// tau o sigma
ComputadMorphism compose(const ComputadMorphism& tau, const ComputadMorphism& sigma);
bool operator==(const ComputadMorphism& a, const ComputadMorphism& b);

bool is_var_to_var(const ComputadMorphism& m);
// Generator map of a variable-to-variable morphism; throws NotVarToVar otherwise.
std::vector<std::vector<int>> var_map(const ComputadMorphism& m);
ComputadMorphism var_morphism(ComputadPtr src, ComputadPtr dst, const std::vector<std::vector<int>>& map);
bool is_injective_var(const ComputadMorphism& m);

namespace detail {
// Fills missing entries (invalid Terms) of a face family on sort s by
// restricting given entries along composite faces; throws `kind` if some entry
// cannot be derived.
void complete_face_family(const Computad& ctx, SortId s, std::vector<Term>& family, ErrorKind kind,
                          const std::string& what);
// Checks (d')^*(family[d]) == family[d o d'] for all composable pairs.
void check_face_family(const Computad& ctx, SortId s, const std::vector<Term>& family, const std::string& what);
}  // namespace detail

ComputadPtr truncate_computad(const ComputadPtr& c, int n);
ComputadPtr skeleton_computad(const ComputadPtr& c, const SignaturePtr& sig);
// Generator inclusion sk_n tr_n C -> C.
ComputadMorphism skeleton_counit(const ComputadPtr& c, int n);

}  // namespace cptd
