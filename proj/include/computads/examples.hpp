#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "computads/computad.hpp"

namespace cptd::examples {

// ---- discrete bases -------------------------------------------------------

CategoryPtr discrete_category(const std::vector<std::string>& sorts);

struct DiscreteSymbol {
  std::string id;
  std::string sort;
  std::vector<std::string> inputs;  // sort of each argument, in order
};

// Symbols over a category without faces; arguments become cells x0, x1, ...
SignaturePtr discrete_signature(CategoryPtr base, const std::vector<DiscreteSymbol>& symbols);
// One sort "*" with add (2 arguments), neg (1) and zero (0).
SignaturePtr group_signature();
// Sorts R and V with ring operations on R and the module operations on V.
SignaturePtr module_signature();

// ---- simplices ------------------------------------------------------------

// Semi-simplicial category up to [n]; sort ids "[m]". Arrows are named by the
// vertices they miss: d<k>_<missing...>, so the face delta_i^k is d<k>_<i>.
CategoryPtr delta_plus(int n);
std::string simplex_sort(int m);
std::string delta_face(int k, int i);
// The arrow [m] -> [k] with the given (strictly increasing) image.
std::string delta_arrow(int k, const std::vector<int>& image);

Presheaf simplex(const CategoryPtr& delta, int m);
Presheaf boundary_simplex(const CategoryPtr& delta, int m);
// Boundary of Delta[m] minus the face opposite vertex k.
Presheaf horn(const CategoryPtr& delta, int m, int k);

std::string kan_face_symbol(int k, int m);
std::string kan_filler_symbol(int k, int m);
// face_{k,m+1} on sort [m] for m+1 <= n, filler_{k,m} on sort [m] for 1 <= m <= n.
SignaturePtr sigma_kan(int n);

// ---- cubes and grids ------------------------------------------------------

// Objects are subsets of the directions; delta_J^a: I \ J -> I.
CategoryPtr cube_category_on(const std::vector<int>& directions);
CategoryPtr cube_category(int max_direction);
std::string cube_sort(const std::vector<int>& subset);
// Face J -> I named "<I>/j+..." (a=1 is '+').
std::string cube_face(const std::vector<int>& target, const std::map<int, int>& alpha);

struct Grid {
  std::vector<int> directions;  // sorted
  std::vector<int> counts;      // G(i) for each direction, same order
};

// Positions of a grid, as a presheaf over `cube` (whose directions contain the grid's).
Presheaf grid_positions(const Grid& g, const CategoryPtr& cube);
std::string grid_cell(const std::vector<int>& sort, const std::vector<int>& position);
// Cells of Pos(G) per sort J, listing directions J in the cube's sort order.
std::vector<int> grid_counts(const Grid& g, const CategoryPtr& cube);

struct GridInclusion {
  Grid face_grid;
  Presheaf source;  // Pos(d_J G)
  Presheaf target;  // Pos(G)
  PresheafMorphism map;
};
// delta_J^{alpha,G}: Pos(d_J G) -> Pos(G); alpha maps each j in J to 0 or 1.
GridInclusion grid_inclusion(const Grid& g, const std::map<int, int>& alpha, const CategoryPtr& cube);

// Adds the coherence symbol for grid g with boundary terms A(i, a) (terms over
// Cptd(Pos g) of sort I \ {i}). Checks the corner compatibility and that each
// A(i, a) is the image of a full-support term along delta_i^{a,G}.
SignaturePtr sigma_mcat_symbol(const SignaturePtr& sig, const std::string& id, const Grid& g,
                               const std::map<std::pair<int, int>, RawTerm>& a);

// ---- globes and pasting diagrams ------------------------------------------

// Globe category up to dimension n: sorts "0".."n", arrows s<m>_<k>, t<m>_<k> for m < k.
CategoryPtr globe_category(int n);
std::string globe_arrow(char kind, int from, int to);

struct BatTree {
  std::vector<BatTree> children;
  friend bool operator==(const BatTree&, const BatTree&) = default;
};

BatTree parse_tree(const std::string& text);
std::string print_tree(const BatTree& t);
int tree_dim(const BatTree& t);
BatTree boundary_tree(const BatTree& t, int n);
Presheaf tree_positions(const BatTree& t, const CategoryPtr& globes);
// s_n^B / t_n^B : Pos(boundary_tree(B, n)) -> Pos(B).
PresheafMorphism tree_source(const BatTree& t, int n, const CategoryPtr& globes);
PresheafMorphism tree_target(const BatTree& t, int n, const CategoryPtr& globes);

// Adds coh_{B,(a,b)} of sort n+1 where n is the sort of a and b (terms over
// Cptd(Pos B)). With groupoidal=true the full-support conditions are skipped.
SignaturePtr sigma_cat_symbol(const SignaturePtr& sig, const std::string& id, const BatTree& tree, const RawTerm& a,
                              const RawTerm& b, bool groupoidal = false);

}  // namespace cptd::examples
