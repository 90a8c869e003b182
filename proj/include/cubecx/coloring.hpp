#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cubecx/complex.hpp"
#include "cubecx/rational.hpp"
#include "cubecx/walls.hpp"

namespace cubecx {

// Graph on walls; also used for abstract graphs in tests and the CLI.
struct WallGraph {
  int radius = 0;
  std::vector<std::vector<int>> adj;  // sorted neighbour lists

  int size() const { return static_cast<int>(adj.size()); }
  int max_degree() const;
  bool adjacent(int a, int b) const;
  std::vector<std::pair<int, int>> edges() const;  // a < b
  static WallGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
};

// Minimum edge distance between the carriers' vertex sets.
std::vector<std::vector<int>> wall_distances(const CubeComplex& cx, const WallSet& ws);
WallGraph build_gamma(const CubeComplex& cx, const WallSet& ws, int radius);

// Colours are 1..n, indexed by node.
using Coloring = std::vector<int>;

Coloring greedy_coloring(const WallGraph& g);
bool is_proper(const WallGraph& g, const Coloring& c);
int num_colors(const Coloring& c);
// p_n: nodes coloured n take the least colour in [n-1] unused by their neighbours under c.
Coloring reduce_coloring(const WallGraph& g, const Coloring& c, int n);
// All proper colourings with colours in [n], lexicographic. Throws past `cap`.
std::vector<Coloring> proper_colorings(const WallGraph& g, int n, std::size_t cap = 1000000);

// g.c with (g.c)(perm[w]) = c(w).
Coloring act(const std::vector<int>& perm, const Coloring& c);
// Automorphisms of the graph as node permutations (brute force, small graphs only).
std::vector<std::vector<int>> graph_automorphisms(const WallGraph& g);

// Finitely supported probability measure on colourings.
struct Measure {
  std::map<Coloring, Rational> mass;
  Rational total() const;
  Rational of(const Coloring& c) const;
};

Measure point_measure(const Coloring& c);
Measure uniform_measure(const std::vector<Coloring>& space);
// Uniform on [n]^V.
Measure uniform_product_measure(int nodes, int n);
// Uniform over group elements of g.c (so orbit points weigh 1/|orbit|).
Measure orbit_measure(const std::vector<std::vector<int>>& perms, const Coloring& c);
Measure push_forward(const Measure& m, const WallGraph& g, int n);
// Sum over the given graph edges of the probability of being monochromatic.
Rational weight(const Measure& m, const std::vector<std::pair<int, int>>& edge_reps);
// Orbit representatives of graph edges under the node permutations.
std::vector<std::pair<int, int>> edge_orbit_reps(const WallGraph& g, const std::vector<std::vector<int>>& perms);

// Uniform on proper (k+1)-colourings. Throws IntegrityError if invariance fails.
Measure exact_invariant_measure(const WallGraph& g, const std::vector<std::vector<int>>& perms,
                                std::size_t cap = 1000000);
// Pointwise invariance mu(g.c) == mu(c), which gives mu(g.A) == mu(A) for every event A.
bool is_invariant(const Measure& m, const std::vector<std::vector<int>>& perms);

std::vector<int> gamma_ball(const WallGraph& g, int center, int radius);

// A class is the colour pattern on its support; membership means agreeing there.
struct ColoringClass {
  enum Kind { kWall, kVertex } kind = kWall;
  int anchor = -1;
  std::map<int, int> pattern;

  bool contains(const Coloring& c) const;
  std::vector<int> support() const;
  auto operator<=>(const ColoringClass&) const = default;
};

ColoringClass class_of_wall(const WallGraph& g, const Coloring& c, int wall);
ColoringClass class_of_vertex(const CubeComplex& cx, const WallSet& ws, const WallGraph& g, const Coloring& c, int x);
// Class moved by a group element: anchor through the vertex or wall permutation, pattern through wall_perm.
ColoringClass act_class(const std::vector<int>& vertex_perm, const std::vector<int>& wall_perm, const ColoringClass& k);

// Orbits of anchored classes; returns groups of indices into `classes`.
std::vector<std::vector<int>> class_orbits(const std::vector<ColoringClass>& classes,
                                           const std::vector<std::vector<int>>& vertex_perms,
                                           const std::vector<std::vector<int>>& wall_perms);

std::string gamma_dot(const WallGraph& g, const Coloring* c = nullptr);

}  // namespace cubecx
