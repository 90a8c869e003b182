#pragma once

#include <string>
#include <vector>

#include "cubecx/complex.hpp"
#include "cubecx/walls.hpp"

namespace cubecx {

struct EndPair {
  int vertex = -1;
  EdgeEnd a, b;
  int wall_a = -1, wall_b = -1;
};

struct SpecialnessReport {
  bool simple = true;
  SimpleResult simple_witness;
  std::vector<EndPair> cond1_violations;
  std::vector<EndPair> cond2_violations;
  bool bipartite = true;
  std::vector<int> odd_cycle;  // closed walk v0 v1 ... v0 of odd length
  bool verdict = true;
};

SpecialnessReport check_c_special(const CubeComplex& cx);
SpecialnessReport check_c_special(const CubeComplex& cx, const WallSet& ws);

// Independent re-checks of reported witnesses.
bool verify_cond1_witness(const CubeComplex& cx, const WallSet& ws, const EndPair& p);
bool verify_cond2_witness(const CubeComplex& cx, const WallSet& ws, const EndPair& p);
bool verify_odd_cycle(const CubeComplex& cx, const std::vector<int>& cycle);
bool verify_simple_witness(const CubeComplex& cx, const SimpleResult& r);

std::string format_report(const CubeComplex& cx, const SpecialnessReport& r);

CubeComplex wedge(const std::vector<CubeComplex>& complexes, const std::vector<int>& basepoints);

// Cellular map: vertex images and cube images (-1 when a cube has no image).
struct CellularMap {
  const CubeComplex* source = nullptr;
  const CubeComplex* target = nullptr;
  std::vector<int> vertex_map;
  std::vector<int> cube_map;
};

// Resolves cube images from vertex images; cubes without an image map to -1.
CellularMap from_vertex_map(const CubeComplex& source, const CubeComplex& target, const std::vector<int>& vertex_map);
bool is_covering(const CellularMap& f);

}  // namespace cubecx
