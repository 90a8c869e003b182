#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cubecx/gluing.hpp"

namespace cubecx {

// (Z, H, (c_x)) with H trivial. Z is cut out by half-space constraints; its
// cells are the cubes of X whose subdivided pieces meet Z.
struct Piece {
  std::map<int, int> constraints;  // wall -> required side
  std::vector<int> vertices;       // sorted
  std::vector<int> cells;          // cubes of dimension >= 1 meeting Z, sorted
  std::map<int, Coloring> colorings;
  long long multiplicity = 1;

  bool contains(int v) const;
  bool has_cell(int c) const;
};

std::vector<int> vertices_satisfying(const Ambient& a, const std::map<int, int>& constraints);
std::vector<int> cells_satisfying(const Ambient& a, const std::map<int, int>& constraints);
// Colouring carried by an edge meeting Z: that of its endpoint in Z (the lower one if both are).
const Coloring& edge_coloring(const Ambient& a, const Piece& p, int edge);
// Cubes of X lying entirely in Z, as a complex.
CubeComplex realize(const Ambient& a, const Piece& p);

enum class MeasureKind { kOrbit, kUniform };

struct HierarchyOptions {
  int radius = -1;  // -1: diameter of X
  MeasureKind measure = MeasureKind::kOrbit;
  std::size_t coloring_cap = 100000;
  std::size_t instance_cap = 100000;
};

struct InitialPieces {
  int k = 0;
  Coloring base_coloring;
  std::vector<Coloring> space;
  Measure measure;
  std::vector<AnchorClasses> anchors;
  GluingSystem system;
  std::vector<Rational> alpha;
  KernelResult kernel;
  std::vector<Piece> pieces;
};

InitialPieces initial_pieces(const Ambient& a, const HierarchyOptions& opt = {});

// Walls of edges leaving the piece. Property (2) is not assumed: check_level counts its failures.
struct BoundaryWalls {
  std::vector<int> all;
  std::vector<int> colored_j;
};
BoundaryWalls boundary_walls(const Ambient& a, const Piece& p, int j);
// Common class of the dual edges of a boundary wall; IntegrityError on disagreement.
ColoringClass zipping_check(const Ambient& a, const Piece& p, int wall);

struct SplitComponent {
  int wall = -1;
  std::vector<int> dual_edges;
  std::vector<int> cells;  // cubes crossed by the wall containing one of the dual edges
};
// Component of the wall, cut where it meets walls coloured <= j by c, containing `edge`.
SplitComponent split_wall_along_coloring(const Ambient& a, int wall, const Coloring& c, int j, int edge);

struct Portal {
  int id = -1;
  int instance = -1;
  int piece = -1;
  int wall = -1;
  int side = 0;  // side of the wall holding Z
  std::vector<int> dual_edges;
  std::vector<int> cells;
  std::set<EdgeClass> signature;
};

// One piece copy per unit of multiplicity.
std::vector<int> expand_instances(const std::vector<Piece>& pieces, std::size_t cap);
std::vector<Portal> find_portals(const Ambient& a, const std::vector<Piece>& pieces, const std::vector<int>& instances,
                                 int j);
bool portal_cover_check(const Ambient& a, const Piece& p, const Portal& portal, int j);

// Group elements g with S(P) = g.S(Q).
std::vector<int> teleports(const Ambient& a, const Portal& p, const Portal& q);

struct CompatClass {
  int rep = -1;
  std::vector<int> members;
  std::vector<int> plus, minus;
};

struct Compatibility {
  std::vector<CompatClass> classes;
  int groupoid_violations = 0;
};
Compatibility compatibility_classes(const Ambient& a, const std::vector<Portal>& portals);

struct Match {
  int plus = -1, minus = -1;
  int g = 0;  // S(plus) = g.S(minus)
};
std::vector<Match> match_portals(const Ambient& a, const std::vector<Portal>& portals, const Compatibility& comp);

std::vector<Piece> glue(const Ambient& a, const std::vector<Piece>& pieces, const std::vector<int>& instances,
                        const std::vector<Portal>& portals, const std::vector<Match>& matching, int j);

// |V^+(f,c)| and |V^-(f,c)| by direct enumeration, multiplicity weighted.
using GluingCounts = std::map<EdgeClass, std::pair<long long, long long>>;
GluingCounts gluing_counts(const Ambient& a, const std::vector<Piece>& pieces);

struct LevelChecks {
  int property1 = 0;
  int property2 = 0;
  int zipping = 0;
  int disjointness = 0;
  int gluing_equations = 0;
  int half_space = 0;
  int portal_cover = 0;
  int groupoid = 0;
  int stabiliser_reports = 0;
  bool counts_preserved = true;
  int total() const;
};

// Properties (1), (2), zipping, j-boundary disjointness, gluing equations, half-space form.
LevelChecks check_level(const Ambient& a, const std::vector<Piece>& pieces, int j, GluingCounts* counts = nullptr);

struct Level {
  int j = 0;
  std::vector<Piece> pieces;
  GluingCounts counts;
  LevelChecks checks;
  std::vector<Portal> portals;  // j-portals, glued to form the next level
  Compatibility compat;
  std::vector<Match> matching;
};

struct HierarchyTrace {
  Ambient ambient;
  int radius = 0;
  InitialPieces init;
  int stab_identity_violations = 0;
  std::vector<Level> levels;  // V_{k+1}, ..., V_0
  bool ok = false;
  std::string error;
  bool v0_isomorphic = false;
};

HierarchyTrace run_hierarchy(const CubeComplex& cx, const GroupAction& g, const HierarchyOptions& opt = {});
// M+-(f,c) evaluated at the multiplicities against |Stab([f,c])| * |V+-(f,c)|, over every (f, c) with c in space.
int stabiliser_identity_violations(const Ambient& a, const InitialPieces& init, const GluingCounts& counts);

std::string format_level(const Ambient& a, const Level& l);
std::string format_trace(const HierarchyTrace& t);

}  // namespace cubecx
