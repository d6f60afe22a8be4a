#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "computads/computad.hpp"

namespace cptd {

// A finite diagram of computads over one signature whose edges are
// variable-to-variable morphisms.
struct Diagram {
  struct Edge {
    int from = 0;
    int to = 0;
    ComputadMorphism map;
  };
  std::vector<ComputadPtr> nodes;
  std::vector<Edge> edges;
};

struct Colimit {
  ComputadPtr apex;
  std::vector<ComputadMorphism> cocone;  // one per node, variable-to-variable
};

// Generators are equivalence classes of (node, generator) pairs. A class is
// named after its least member in (name, node) order; a name already taken
// by another class gets the suffix "#node". Throws NotVarToVar.
Colimit colimit_var(const Diagram& d);

// Pushout of f: a -> b and g: a -> c.
Colimit pushout_var(const ComputadMorphism& f, const ComputadMorphism& g);
Colimit coproduct(const std::vector<ComputadPtr>& cs);

// Visits every variable-to-variable morphism c -> d, as a generator map,
// until visit returns false. With `injective` only monomorphisms are visited.
void for_each_var_morphism(const ComputadPtr& c, const ComputadPtr& d, bool injective,
                           const std::function<bool(const std::vector<std::vector<int>>&)>& visit);
long count_var_morphisms(const ComputadPtr& c, const ComputadPtr& d);

// A variable-to-variable isomorphism c -> d, if one exists.
std::optional<ComputadMorphism> find_isomorphism(const ComputadPtr& c, const ComputadPtr& d);
bool isomorphic(const ComputadPtr& c, const ComputadPtr& d);

// Visits every morphism c -> d whose generator images have depth <= depth,
// until visit returns false.
void for_each_morphism(const ComputadPtr& c, const ComputadPtr& d, int depth,
                       const std::function<bool(const ComputadMorphism&)>& visit);
std::vector<ComputadMorphism> enumerate_morphisms(const ComputadPtr& c, const ComputadPtr& d, int depth);

}  // namespace cptd
