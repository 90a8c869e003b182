#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cubecx/complex.hpp"
#include "cubecx/group.hpp"

namespace cubecx {

struct Wall {
  int id = -1;
  std::vector<int> dual_edges;                 // edge cube ids
  std::vector<std::pair<int, int>> midcubes;   // (cube, coordinate)
  std::vector<int> carrier_cubes;
  std::vector<int> carrier_vertices;
};

class WallSet {
 public:
  WallSet() = default;
  explicit WallSet(const CubeComplex& cx);

  int size() const { return static_cast<int>(walls_.size()); }
  const Wall& operator[](int w) const { return walls_.at(w); }
  const std::vector<Wall>& all() const { return walls_; }
  int wall_of_edge(int edge) const { return wall_of_edge_.at(edge); }
  int wall_of(EdgeEnd e) const { return wall_of_edge_.at(e.edge); }
  // Walls with a midcube in the cube, sorted.
  const std::vector<int>& walls_of_cube(int c) const { return walls_of_cube_.at(c); }
  // Some cube carries midcubes of both walls.
  bool intersect(int a, int b) const { return a != b && inter_[a][b]; }
  // Induced permutation of walls for every group element.
  std::vector<std::vector<int>> wall_perms(const GroupAction& g) const;

 private:
  std::vector<Wall> walls_;
  std::vector<int> wall_of_edge_;
  std::vector<std::vector<int>> walls_of_cube_;
  std::vector<std::vector<char>> inter_;
};

WallSet compute_walls(const CubeComplex& cx);

struct SidePartition {
  int wall = -1;
  std::vector<std::vector<int>> classes;  // classes[0] is W+ and classes[1] is W- when two-sided
  std::vector<int> side;                  // per vertex: +1, -1, or 0 off the carrier
  bool two_sided() const { return classes.size() == 2; }
};

SidePartition side_partition(const CubeComplex& cx, const WallSet& ws, int w);

// W+/W- labels for every wall, chosen once per wall orbit and transported by the group.
struct SideLabels {
  std::vector<SidePartition> parts;
  bool equivariant = true;
};
SideLabels label_sides(const CubeComplex& cx, const WallSet& ws, const GroupAction& g);

struct HalfSpacePair {
  int wall = -1;
  std::vector<int> plus, minus;
  std::vector<int> side;  // per vertex, +1 or -1
};

HalfSpacePair half_spaces(const CubeComplex& cx, const WallSet& ws, const SidePartition& part);

class HalfSpaceTable {
 public:
  HalfSpaceTable() = default;
  HalfSpaceTable(const CubeComplex& cx, const WallSet& ws, const SideLabels& labels);
  HalfSpaceTable(const CubeComplex& cx, const WallSet& ws);
  int side(int w, int v) const { return pairs_[w].side[v]; }
  const HalfSpacePair& operator[](int w) const { return pairs_.at(w); }
  int size() const { return static_cast<int>(pairs_.size()); }

 private:
  std::vector<HalfSpacePair> pairs_;
};

std::vector<int> separating_walls(const HalfSpaceTable& hs, int x, int y);

struct GeodesicReport {
  bool geodesic = false;
  int start = -1, end = -1;
  int length = 0;
  std::vector<int> separating;
  std::map<int, int> crossings;  // wall -> times crossed
};

GeodesicReport check_geodesic(const CubeComplex& cx, const WallSet& ws, const HalfSpaceTable& hs, int start,
                              const std::vector<int>& edges);
// Same, for a walk given by vertices; consecutive vertices must be joined by a unique edge.
GeodesicReport check_geodesic_walk(const CubeComplex& cx, const WallSet& ws, const HalfSpaceTable& hs,
                                   const std::vector<int>& walk);

struct HellyResult {
  bool found = false;
  int cube = -1;
};

HellyResult check_helly(const CubeComplex& cx, const WallSet& ws, const std::vector<int>& walls);

std::string walls_dot(const CubeComplex& cx, const WallSet& ws);
std::string half_space_dot(const CubeComplex& cx, const HalfSpacePair& hp);

}  // namespace cubecx
