#pragma once

#include <vector>

#include "cubecx/complex.hpp"
#include "cubecx/special.hpp"

namespace cubecx {

// Ball of the universal cover around a lift of `base`.
struct DevelopedBall {
  CubeComplex ball;
  std::vector<int> vertex_map;  // ball vertex -> base complex vertex
  std::vector<int> cube_map;    // ball cube -> base complex cube
  std::vector<int> layer;       // distance from the lifted basepoint
  int base = -1;
  int radius = 0;
};

// Lifts vertices layer by layer; two forward steps are identified exactly when
// a square at the layer below closes them up. Throws on non-NPC input.
DevelopedBall develop(const CubeComplex& cx, int base, int radius);

// Develops to radius diameter+1 from vertex 0 and compares sizes with the complex.
bool certify_simply_connected(const CubeComplex& cx);

struct DoubleCover {
  CubeComplex cover;
  std::vector<int> vertex_map;
  std::vector<int> cube_map;
};

// Parity double cover: vertex v lifts to "v/0" and "v/1", every edge changes sheet.
DoubleCover double_cover_bipartite(const CubeComplex& cx);

}  // namespace cubecx
