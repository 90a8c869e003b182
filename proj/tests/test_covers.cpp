#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "cubecx/covers.hpp"
#include "cubecx/fixtures.hpp"
#include "cubecx/special.hpp"
#include "oracle.hpp"

using namespace cubecx;
namespace fx = cubecx::fixtures;

TEST_CASE("4-cycle unwraps to a line segment") {
  auto b = develop(fx::cycle(4), 0, 2);
  CHECK(b.ball.num_vertices() == 5);
  CHECK(isomorphic(b.ball, fx::path(4)));
}

TEST_CASE("a simply connected square develops to itself") {
  for (int r : {2, 3, 5}) {
    auto b = develop(fx::square(), 0, r);
    CHECK(isomorphic(b.ball, fx::square()));
  }
}

TEST_CASE("one-vertex torus develops to L1 balls of the square lattice") {
  auto t = fx::torus1v();
  auto b1 = develop(t, 0, 1);
  CHECK(b1.ball.num_vertices() == 5);
  CHECK(b1.ball.count_dim(1) == 4);
  CHECK(b1.ball.count_dim(2) == 0);
  for (int r = 1; r <= 5; ++r) {
    auto b = develop(t, 0, r);
    // lattice points with |x| + |y| <= r
    int pts = 0, edges = 0, squares = 0;
    auto in = [r](int x, int y) { return std::abs(x) + std::abs(y) <= r; };
    for (int x = -r; x <= r; ++x)
      for (int y = -r; y <= r; ++y) {
        if (!in(x, y)) continue;
        ++pts;
        edges += in(x + 1, y) + in(x, y + 1);
        squares += in(x + 1, y) && in(x, y + 1) && in(x + 1, y + 1);
      }
    CHECK(b.ball.num_vertices() == pts);
    CHECK(b.ball.count_dim(1) == edges);
    CHECK(b.ball.count_dim(2) == squares);
    CHECK(check_c_special(b.ball).verdict);
    CHECK(certify_simply_connected(b.ball));
  }
}

TEST_CASE("developed balls respect the covering map") {
  for (const auto& name : {"torus1v", "cycle4", "mobius_strip", "grid2x2", "triangle"}) {
    auto cx = fx::by_name(name);
    if (!is_npc(cx).npc) continue;
    auto b = develop(cx, 0, 3);
    CHECK(b.vertex_map[0] == 0);
    CHECK(b.layer[0] == 0);
    for (int c = 0; c < b.ball.num_cubes(); ++c) {
      const auto& cu = b.ball.cube(c);
      const auto& img = cx.cube(b.cube_map[c]);
      REQUIRE(cu.dim == img.dim);
      for (std::size_t q = 0; q < cu.verts.size(); ++q) CHECK(b.vertex_map[cu.verts[q]] == img.verts[q]);
    }
    // layers are BFS distances from the lifted base
    auto d = oracle::distances(b.ball);
    for (int v = 0; v < b.ball.num_vertices(); ++v) CHECK(d[0][v] == b.layer[v]);
    // interior vertices see every edge-end of their image
    for (int v = 0; v < b.ball.num_vertices(); ++v)
      if (b.layer[v] < 3) CHECK(b.ball.ends_at(v).size() == cx.ends_at(b.vertex_map[v]).size());
  }
}

TEST_CASE("development is deterministic") {
  auto x = fx::torus1v();
  auto a = develop(x, 0, 3), b = develop(x, 0, 3);
  CHECK(a.ball.names() == b.ball.names());
  CHECK(a.cube_map == b.cube_map);
}

TEST_CASE("development rejects non-NPC input") {
  CHECK_THROWS_AS(develop(fx::cube3_boundary(), 0, 2), PreconditionError);
}

TEST_CASE("simple connectivity certificate") {
  CHECK(certify_simply_connected(fx::cube(3)));
  CHECK_FALSE(certify_simply_connected(fx::cycle(4)));
  CHECK(certify_simply_connected(fx::by_name("tripod_x_segment")));
  CHECK_FALSE(certify_simply_connected(fx::torus1v()));
  CHECK_FALSE(certify_simply_connected(fx::mobius_strip()));
  for (const auto& name : fx::cat0_names()) CHECK_MESSAGE(certify_simply_connected(fx::by_name(name)), name);
}

TEST_CASE("CAT(0) fixtures develop onto themselves") {
  for (const auto& name : fx::cat0_names()) {
    auto cx = fx::by_name(name);
    auto b = develop(cx, 0, cx.diameter() + 1);
    CHECK_MESSAGE(isomorphic(b.ball, cx), name);
  }
}

TEST_CASE("parity double covers") {
  auto tri = double_cover_bipartite(fx::cycle(3));
  CHECK(isomorphic(tri.cover, fx::cycle(6)));

  auto sq = double_cover_bipartite(fx::square());
  CHECK(sq.cover.num_vertices() == 8);
  CHECK(sq.cover.count_dim(2) == 2);
  CHECK_FALSE(sq.cover.connected());
  auto comp = oracle::components_without(sq.cover, {});
  CHECK(std::set<int>(comp.begin(), comp.end()).size() == 2);

  auto w = double_cover_bipartite(fx::wedge_of_loops());
  CHECK(w.cover.num_vertices() == 2);
  CHECK(w.cover.count_dim(1) == 4);
  CHECK(check_c_special(w.cover).bipartite);

  for (const auto& name : {"torus1v", "triangle", "mobius_square", "cube3", "mobius_strip"}) {
    auto x = fx::by_name(name);
    auto dc = double_cover_bipartite(x);
    CellularMap f{&dc.cover, &x, dc.vertex_map, dc.cube_map};
    CHECK_MESSAGE(is_covering(f), std::string(name));
    CHECK(check_c_special(dc.cover).bipartite);
    CHECK(dc.cover.num_cubes() == 2 * x.num_cubes());
  }
}
