#pragma once

#include <string>
#include <vector>

#include "cubecx/complex.hpp"
#include "cubecx/group.hpp"

namespace cubecx::fixtures {

CubeComplex point();
CubeComplex segment();
CubeComplex square();  // a b / c d with a=00, b=10, c=01, d=11
CubeComplex cube(int n);
CubeComplex path(int edges);
CubeComplex tripod();  // centre o, leaves p q r
CubeComplex grid(int m, int n);
CubeComplex cycle(int n);
CubeComplex torus1v();      // one vertex, two loops, one square
CubeComplex wedge_of_loops();
CubeComplex mobius_square();  // square with left and right edges identified by a flip
// Strip of two squares closed up with a flip; only the core wall is one-sided.
CubeComplex mobius_strip();
CubeComplex double_corner();  // two squares sharing two edges at a corner
CubeComplex inter_osculation();  // L of three squares with two outer corners identified
CubeComplex cube3_boundary();
CubeComplex broom();  // o - a1 - a2 - a3 - {b, c}

// Named fixture lookup; throws PreconditionError on an unknown name.
CubeComplex by_name(const std::string& name);
std::vector<std::string> names();
// Simply connected NPC fixtures.
std::vector<std::string> cat0_names();
// Non-special fixtures with the condition each is expected to break.
std::vector<std::string> pathology_names();

GroupAction broom_swap(const CubeComplex& broom);         // exchanges b and c
GroupAction square_rotation(const CubeComplex& square);   // a -> b -> d -> c -> a
GroupAction grid_rotation(const CubeComplex& grid2x2);    // quarter turn of the 2x2 grid

}  // namespace cubecx::fixtures
