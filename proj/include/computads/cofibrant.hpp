#pragma once

#include <optional>
#include <string>
#include <vector>

#include "computads/algebra.hpp"
#include "computads/computad.hpp"

namespace cptd {

// The inclusion of the boundary computad into the representable one at sort s.
ComputadMorphism boundary_inclusion(const SignaturePtr& sig, SortId s);

// One stage of the skeletal filtration: the generators of one dimension are
// attached to the previous stage along their boundary-classifying morphisms.
struct FiltrationStage {
  int dim = 0;
  ComputadPtr computad;              // generators of dimension <= dim
  std::vector<GenRef> added;         // generators of this dimension
  std::vector<ComputadMorphism> phi;  // boundary computad -> previous stage, per added generator
  std::vector<ComputadMorphism> psi;  // representable -> this stage, per added generator
  ComputadMorphism kappa;             // previous stage -> this stage
};

struct SkeletalFiltration {
  ComputadPtr source;
  ComputadPtr bottom;  // the empty computad
  std::vector<FiltrationStage> stages;
};

SkeletalFiltration skeletal_filtration(const ComputadPtr& c);

// A new generator of the given sort glued along phi: boundary computad -> base.
struct CellAttachment {
  SortId sort = 0;
  std::string name;
  ComputadMorphism phi;
};

// The pushout of the coproduct of boundary inclusions along the attaching maps.
struct Attachment {
  ComputadPtr computad;
  ComputadMorphism inclusion;          // base -> computad
  std::vector<ComputadMorphism> cells;  // representable -> computad, per attachment
};
Attachment attach_cells(const ComputadPtr& base, const std::vector<CellAttachment>& cells);

// Rebuilds the top stage from the empty computad by attaching cells.
ComputadPtr replay(const SkeletalFiltration& f);

// A generator of Und(A): a type (one term per face) and a carrier cell whose
// faces are the evaluated type.
struct CofGenerator {
  SortId sort = 0;
  std::vector<Term> type;
  int cell = 0;
};

struct UnderlyingComputad {
  ComputadPtr computad;
  std::vector<std::vector<CofGenerator>> generators;  // parallel to the computad's generators
  // True when every type was enumerated, i.e. the depth bound lost nothing.
  bool exact = true;
  int depth = 0;
};

// Types are enumerated with terms of depth <= depth. Generators are named after
// their cell, with the generating faces of the type appended as "@(d=t,...)".
UnderlyingComputad underlying_computad(const Algebra& a, int depth);

struct CofibrantReplacement {
  Algebra algebra;
  UnderlyingComputad und;
  Algebra cof;          // free algebra on und, truncated at the depth bound
  PresheafMorphism r;  // carrier of cof -> carrier of the algebra, by evaluation
};

CofibrantReplacement counit_r(const Algebra& a, int depth);

// The generator term for (T, x). Throws NotCompatible when the faces of x are
// not the evaluated type and DepthExceeded when the type lies beyond the bound.
Term lift_v(const CofibrantReplacement& cr, SortId s, const std::vector<Term>& type, int cell);

// A boundary family in x over a cell of y that has no filler.
struct TfibCounterexample {
  SortId sort = 0;
  int target = 0;             // cell of y
  std::vector<int> boundary;  // flattened morphism from the boundary representable into x
};

// Checks that every square from a boundary inclusion into sigma: x -> y has a
// filler, i.e. X_s -> (Y_s x_{boundaries} Hom(boundary, X)) is surjective, for
// the given sorts (all when empty).
std::optional<TfibCounterexample> check_trivial_fibration(const Presheaf& x, const Presheaf& y,
                                                          const PresheafMorphism& sigma,
                                                          const std::vector<SortId>& sorts = {});

}  // namespace cptd
