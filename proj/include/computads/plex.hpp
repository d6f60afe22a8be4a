#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "computads/colimit.hpp"
#include "computads/computad.hpp"

namespace cptd {

// A term of the terminal computad, stored as a finite tree. A variable node
// carries its boundary family (one polyplex per non-identity face into the
// sort, in face order); an application node carries its arguments in the
// flat cell order of the arity.
class Polyplex {
 public:
  Polyplex() = default;
  static Polyplex var(SortId sort, std::vector<Polyplex> family);
  static Polyplex app(SortId sort, int symbol, std::vector<Polyplex> args);

  bool valid() const { return sort_ >= 0; }
  bool is_var() const { return symbol_ < 0; }
  SortId sort() const { return sort_; }
  int symbol() const { return symbol_; }
  const std::vector<Polyplex>& children() const { return children_; }
  int depth() const { return depth_; }

  friend bool operator==(const Polyplex&, const Polyplex&) = default;
  friend std::strong_ordering operator<=>(const Polyplex& a, const Polyplex& b);

 private:
  SortId sort_ = -1;
  int symbol_ = -1;
  int depth_ = 0;
  std::vector<Polyplex> children_;
};

// Plexes are the variable polyplexes.
inline bool is_plex(const Polyplex& p) { return p.valid() && p.is_var(); }

Polyplex classify(const Computad& c, const Term& t);
// delta^* p, computed symbolically.
Polyplex boundary(const Signature& sig, ArrowId face, const Polyplex& p);
// Throws CocycleFailure or IncompatibleArgs on malformed input.
void check_polyplex(const Signature& sig, const Polyplex& p);

// Written like a term: "*" or "*(s=*,t=*)" for variables, "f[x=...,...]" for applications.
std::string render(const Signature& sig, const Polyplex& p);

// All polyplexes of sort s with depth <= max_depth, in render order.
std::vector<Polyplex> enumerate_polyplexes(const SignaturePtr& sig, SortId s, int max_depth);

// The representing computad |p| and its universal term. Generators are named
// "*" (the top generator of a variable polyplex) and x0, x1, ... in order of
// first appearance from the universal term.
struct Representation {
  ComputadPtr computad;
  Term universal;
};
Representation polyplex_computad(const SignaturePtr& sig, const Polyplex& p);

// The variable-to-variable morphism rep -> c sending `universal` to t, if the
// two terms have the same shape.
std::optional<ComputadMorphism> classifying_morphism(const ComputadPtr& rep, const Term& universal,
                                                     const ComputadPtr& c, const Term& t);

// Nerve data: each element is a generator v of C together with the map from
// the representing computad of its plex into C.
struct Nerve {
  SignaturePtr sig;
  std::vector<Polyplex> plexes;                // every plex of depth <= the bound, all sorts
  std::vector<Representation> reps;            // one per plex
  std::vector<std::vector<std::string>> fibres;  // generator names of C, per plex
  struct Element {
    int plex = 0;
    std::string gen;
    std::vector<std::vector<std::string>> image;  // generator of |p| -> generator of C
  };
  std::vector<Element> elements;
};

// The bound defaults to the largest depth of a generator's plex.
Nerve nerve(const ComputadPtr& c, int max_depth = -1);
// The colimit of representing computads over the elements of the nerve.
ComputadPtr reconstruct_from_nerve(const Nerve& n);

}  // namespace cptd
