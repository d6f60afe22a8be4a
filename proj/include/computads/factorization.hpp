#pragma once

#include <optional>
#include <vector>

#include "computads/computad.hpp"

namespace cptd {

// Generators of each sort reachable from a term through variables and gluings,
// as sorted index lists per sort.
using Support = std::vector<std::vector<int>>;

Support support(const Computad& c, const Term& t);
std::vector<int> support(const Computad& c, const Term& t, SortId s);
Support support(const ComputadMorphism& m);
bool is_full(const Computad& c, const Support& s);
Support support_union(Support a, const Support& b);

// For an injective variable-to-variable rho: D -> E and sigma: C -> E, the
// unique sigma': C -> D with rho o sigma' = sigma, or nullopt when the support
// of sigma leaves the image of rho. Throws NotMono when rho is not injective
// variable-to-variable.
std::optional<ComputadMorphism> lift_through_mono(const ComputadMorphism& rho, const ComputadMorphism& sigma);

struct ImageFactorization {
  ComputadMorphism epi;   // src -> image, full support
  ComputadMorphism mono;  // image -> dst, injective variable-to-variable
};

ImageFactorization image_factorize(const ComputadMorphism& sigma);
bool is_epi(const ComputadMorphism& sigma);

struct Splitting {
  ComputadMorphism retraction;  // C -> M
  ComputadMorphism section;     // M -> C
};

// Splits an idempotent endomorphism e = section o retraction with
// retraction o section = id. Throws NotIdempotent.
Splitting split_idempotent(const ComputadMorphism& e);

}  // namespace cptd
