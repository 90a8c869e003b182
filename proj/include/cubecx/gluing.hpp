#pragma once

#include <map>
#include <string>
#include <vector>

#include "cubecx/coloring.hpp"
#include "cubecx/group.hpp"
#include "cubecx/rational.hpp"
#include "cubecx/walls.hpp"

namespace cubecx {

using IntMatrix = std::vector<std::vector<Int>>;

// Everything derived once from (X, G, R).
struct Ambient {
  const CubeComplex* cx = nullptr;
  const GroupAction* group = nullptr;
  WallSet ws;
  SideLabels labels;
  HalfSpaceTable hs;
  std::vector<std::vector<int>> wall_perms;
  WallGraph gamma;

  static Ambient make(const CubeComplex& cx, const GroupAction& g, int radius);
  int wall_of(int edge) const { return ws.wall_of_edge(edge); }
  // Endpoint of an edge on the given side (+1 or -1) of its wall.
  int endpoint_on(int edge, int side) const;
};

// [e, c] as (edge, class of c on the ball around W(e)).
struct EdgeClass {
  int edge = -1;
  ColoringClass cls;
  auto operator<=>(const EdgeClass&) const = default;
};
EdgeClass edge_class(const Ambient& a, int edge, const Coloring& c);
EdgeClass act_edge_class(const Ambient& a, int g, const EdgeClass& ec);
int stabilizer_order(const Ambient& a, const EdgeClass& ec);

// Vertex-class template: anchor vertex x_i with colouring c_il.
struct Template {
  int anchor = -1;
  Coloring coloring;
  ColoringClass cls;
};

struct AnchorClasses {
  int vertex = -1;
  int stabilizer = 1;
  std::vector<ColoringClass> classes;
};

// alpha_il = mu([c_il]_{x_i}) / |Stab(x_i)|. Classes of each anchor must partition the support of mu.
std::vector<Rational> seed_alpha(const Measure& mu, const std::vector<AnchorClasses>& anchors);

struct GluingRow {
  EdgeClass key;               // orbit representative (f, [c]_f)
  std::vector<Int> plus, minus;  // per template
  int stabilizer = 1;          // |Stab_G([f, c])|
};

struct GluingSystem {
  std::vector<Template> templates;
  std::vector<GluingRow> rows;
  IntMatrix matrix() const;  // plus - minus
};

// Coefficients of M+ (side = +1) or M- (side = -1) at (f, [c]_f).
std::vector<Int> count_m(const Ambient& a, const std::vector<Template>& templates, const EdgeClass& fc, int side);
// One row per G-orbit of (f, [c]_f) with c in `space`.
GluingSystem build_system(const Ambient& a, const std::vector<Template>& templates,
                          const std::vector<Coloring>& space);

struct KernelResult {
  std::vector<Int> w;
  int support = 0;
  int kernel_dim = 0;
  std::string strategy;  // "search" or "scaled-hint"
};

// Non-negative, non-zero integer vector in ker A supported inside the support of `hint`.
KernelResult nonneg_integer_kernel(const IntMatrix& a, const std::vector<Rational>& hint,
                                   std::size_t budget = 50000);
std::vector<Int> multiply(const IntMatrix& a, const std::vector<Int>& v);
std::vector<Rational> multiply(const IntMatrix& a, const std::vector<Rational>& v);
// Reduced row echelon form; returns pivot columns.
std::vector<int> rref(std::vector<std::vector<Rational>>& m);
std::vector<std::vector<Rational>> kernel_basis(const std::vector<std::vector<Rational>>& m);

}  // namespace cubecx
