#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <set>

#include "cubecx/assembly.hpp"
#include "cubecx/fixtures.hpp"
#include "oracle.hpp"

using namespace cubecx;
namespace fx = cubecx::fixtures;

namespace {

struct Setup {
  CubeComplex cx;
  GroupAction g;
  Ambient a;
  explicit Setup(CubeComplex c) : cx(std::move(c)), g(GroupAction::trivial(cx)) { a = Ambient::make(cx, g, cx.diameter()); }
  Setup(CubeComplex c, GroupAction grp) : cx(std::move(c)), g(std::move(grp)) { a = Ambient::make(cx, g, cx.diameter()); }
  Setup(const Setup&) = delete;
};

const Level& level(const HierarchyTrace& t, int j) {
  for (const auto& l : t.levels)
    if (l.j == j) return l;
  throw std::runtime_error("no level");
}

}  // namespace

TEST_CASE("initial pieces") {
  Setup seg(fx::segment());
  auto ip = initial_pieces(seg.a);
  REQUIRE(ip.pieces.size() == 2);
  for (const auto& p : ip.pieces) {
    CHECK(p.multiplicity == 1);
    CHECK(p.vertices.size() == 1);
    CHECK(p.cells.size() == 1);
  }

  Setup sq(fx::square());
  auto iq = initial_pieces(sq.a);
  REQUIRE(iq.pieces.size() == 4);
  for (const auto& p : iq.pieces) {
    CHECK(p.multiplicity == 1);
    CHECK(p.vertices.size() == 1);
    CHECK(p.cells.size() == 3);  // two half-edges and a quarter square
  }
  CHECK(check_level(sq.a, iq.pieces, iq.k + 1).total() == 0);

  Setup pt(fx::point());
  auto ipt = initial_pieces(pt.a);
  REQUIRE(ipt.pieces.size() == 1);
  CHECK(ipt.system.rows.empty());
  CHECK(ipt.pieces[0].vertices.size() == 1);
}

TEST_CASE("initial constraints agree with all half-spaces containing the anchor") {
  for (const auto& name : {"square", "cube3", "tripod_x_segment", "grid3x2"}) {
    Setup s(fx::by_name(name));
    auto ip = initial_pieces(s.a);
    for (const auto& p : ip.pieces) {
      REQUIRE(p.vertices.size() == 1);
      int x = p.vertices[0];
      std::map<int, int> all;
      for (int w = 0; w < s.a.ws.size(); ++w) all[w] = s.a.hs.side(w, x);
      CHECK(vertices_satisfying(s.a, all) == p.vertices);
      CHECK(cells_satisfying(s.a, all) == p.cells);
      // cells are the cubes containing x
      std::vector<int> at = s.cx.cubes_at(x);
      std::sort(at.begin(), at.end());
      CHECK(p.cells == at);
    }
  }
}

TEST_CASE("boundary walls") {
  Setup seg(fx::segment());
  auto ip = initial_pieces(seg.a);
  for (const auto& p : ip.pieces) {
    auto b = boundary_walls(seg.a, p, 1);
    CHECK(b.all == std::vector<int>{0});
    CHECK(b.colored_j == std::vector<int>{0});
  }

  Setup sq(fx::square());
  auto iq = initial_pieces(sq.a);
  for (const auto& p : iq.pieces) {
    CHECK(boundary_walls(sq.a, p, 2).all.size() == 2);
    for (int j : {1, 2}) CHECK(boundary_walls(sq.a, p, j).colored_j.size() == 1);
  }

  auto t = run_hierarchy(sq.cx, sq.g);
  REQUIRE(t.ok);
  const auto& v0 = level(t, 0).pieces;
  REQUIRE(v0.size() == 1);
  CHECK(boundary_walls(t.ambient, v0[0], 0).all.empty());
}

TEST_CASE("zipping") {
  Setup seg(fx::segment());
  auto ip = initial_pieces(seg.a);
  for (const auto& p : ip.pieces)
    CHECK(zipping_check(seg.a, p, 0) == class_of_wall(seg.a.gamma, p.colorings.begin()->second, 0));

  // after gluing along the colour-2 wall, the dominoes carry two dual edges of the colour-1 wall
  Setup sq(fx::square());
  auto t = run_hierarchy(sq.cx, sq.g);
  REQUIRE(t.ok);
  const Ambient& a = t.ambient;
  const auto& dominoes = level(t, 1).pieces;
  REQUIRE(dominoes.size() == 2);
  int w1 = -1;
  for (int w = 0; w < a.ws.size(); ++w)
    if (t.init.base_coloring[w] == 1) w1 = w;
  for (const auto& p : dominoes) {
    CHECK(p.vertices.size() == 2);
    auto k = zipping_check(a, p, w1);
    int hits = 0;
    for (int e : a.ws[w1].dual_edges) {
      const auto& vs = sq.cx.cube(e).verts;
      int x = p.contains(vs[0]) ? vs[0] : p.contains(vs[1]) ? vs[1] : -1;
      if (x < 0) continue;
      ++hits;
      CHECK(class_of_wall(a.gamma, p.colorings.at(x), w1) == k);
    }
    CHECK(hits == 2);
  }
}

TEST_CASE("splitting a wall along lower colours") {
  Setup seg(fx::segment());
  auto s = split_wall_along_coloring(seg.a, 0, {1}, 1, seg.cx.edges()[0]);
  CHECK(s.dual_edges == seg.cx.edges());

  Setup c3(fx::cube(3));
  Coloring c = {1, 2, 3};
  const auto& dual = c3.a.ws[2].dual_edges;
  std::set<std::vector<int>> comps;
  for (int e : dual) {
    auto comp = split_wall_along_coloring(c3.a, 2, c, 2, e);
    CHECK(comp.dual_edges == std::vector<int>{e});
    comps.insert(comp.dual_edges);
  }
  CHECK(comps.size() == 4);
  auto whole = split_wall_along_coloring(c3.a, 2, c, 0, dual[0]);
  CHECK(whole.dual_edges.size() == 4);
  CHECK(whole.cells.size() == 1 + 4 + 4);  // the cube, its four squares and four edges crossed by the wall
  auto half = split_wall_along_coloring(c3.a, 2, c, 1, dual[0]);
  CHECK(half.dual_edges.size() == 2);
}

TEST_CASE("portals, compatibility and matching on the segment") {
  Setup seg(fx::segment());
  auto ip = initial_pieces(seg.a);
  auto inst = expand_instances(ip.pieces, 100);
  CHECK(inst.size() == 2);
  auto portals = find_portals(seg.a, ip.pieces, inst, 1);
  REQUIRE(portals.size() == 2);
  for (const auto& p : portals) CHECK(portal_cover_check(seg.a, ip.pieces[p.piece], p, 1));
  CHECK(teleports(seg.a, portals[0], portals[1]) == std::vector<int>{0});
  auto comp = compatibility_classes(seg.a, portals);
  REQUIRE(comp.classes.size() == 1);
  CHECK(comp.groupoid_violations == 0);
  auto m = match_portals(seg.a, portals, comp);
  REQUIRE(m.size() == 1);
  CHECK(m[0].g == 0);
  CHECK(portals[m[0].plus].side == 1);
  CHECK(portals[m[0].minus].side == -1);
  auto glued = glue(seg.a, ip.pieces, inst, portals, m, 1);
  REQUIRE(glued.size() == 1);
  CHECK(glued[0].vertices.size() == 2);
  CHECK(glued[0].constraints.empty());
  CHECK(isomorphic(realize(seg.a, glued[0]), seg.cx));

  CHECK(match_portals(seg.a, {}, Compatibility{}).empty());
  CHECK(compatibility_classes(seg.a, {}).classes.empty());
}

TEST_CASE("pieces without colour-j portals pass through glue unchanged") {
  Setup sq(fx::square());
  auto t = run_hierarchy(sq.cx, sq.g);
  REQUIRE(t.ok);
  const auto& v0 = level(t, 0).pieces;
  auto inst = expand_instances(v0, 10);
  auto portals = find_portals(t.ambient, v0, inst, 1);
  CHECK(portals.empty());
  auto out = glue(t.ambient, v0, inst, portals, {}, 1);
  REQUIRE(out.size() == 1);
  CHECK(out[0].vertices == v0[0].vertices);
  CHECK(out[0].cells == v0[0].cells);
}

TEST_CASE("square hierarchy: corners, dominoes, square") {
  Setup sq(fx::square());
  auto t = run_hierarchy(sq.cx, sq.g);
  REQUIRE(t.ok);
  CHECK(t.init.k == 1);
  REQUIRE(t.levels.size() == 3);
  CHECK(level(t, 2).pieces.size() == 4);
  const auto& l2 = level(t, 2);
  CHECK(l2.portals.size() == 4);
  // with trivial G a teleport must fix the dual edge, so each colour-2 edge is its own class
  REQUIRE(l2.compat.classes.size() == 2);
  for (const auto& c : l2.compat.classes) {
    CHECK(c.plus.size() == 1);
    CHECK(c.minus.size() == 1);
  }
  CHECK(l2.matching.size() == 2);
  CHECK(level(t, 1).pieces.size() == 2);
  CHECK(level(t, 0).pieces.size() == 1);
  CHECK(t.v0_isomorphic);
}

TEST_CASE("teleports agree with brute force and close up into classes") {
  for (auto which : {0, 1}) {
    CubeComplex cx = which == 0 ? fx::grid(2, 2) : fx::broom();
    GroupAction g = which == 0 ? fx::grid_rotation(cx) : fx::broom_swap(cx);
    auto t = run_hierarchy(cx, g);
    REQUIRE(t.ok);
    const Ambient& a = t.ambient;
    for (const auto& l : t.levels) {
      const auto& P = l.portals;
      std::vector<int> root(P.size());
      std::iota(root.begin(), root.end(), 0);
      std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
      for (std::size_t i = 0; i < P.size(); ++i)
        for (std::size_t k = 0; k < P.size(); ++k) {
          std::vector<int> brute;
          for (int h = 0; h < g.size(); ++h) {
            std::set<EdgeClass> moved;
            for (const auto& ec : P[k].signature) moved.insert(act_edge_class(a, h, ec));
            if (moved == P[i].signature) brute.push_back(h);
          }
          CHECK(teleports(a, P[i], P[k]) == brute);
          if (!brute.empty()) root[find(static_cast<int>(i))] = find(static_cast<int>(k));
        }
      std::set<int> roots;
      for (std::size_t i = 0; i < P.size(); ++i) roots.insert(find(static_cast<int>(i)));
      CHECK(roots.size() == l.compat.classes.size());
      CHECK(l.compat.groupoid_violations == 0);
      for (const auto& m : l.matching) {
        CHECK(P[m.plus].side == 1);
        CHECK(P[m.minus].side == -1);
      }
    }
  }
}

TEST_CASE("round trip on every CAT(0) fixture") {
  for (const auto& name : fx::cat0_names()) {
    auto cx = fx::by_name(name);
    auto g = GroupAction::trivial(cx);
    auto t = run_hierarchy(cx, g);
    CHECK_MESSAGE(t.ok, (name + ": " + t.error));
    CHECK(t.v0_isomorphic);
    REQUIRE(!t.levels.empty());
    const auto& last = t.levels.back();
    CHECK(last.j == 0);
    REQUIRE(last.pieces.size() == 1);
    CHECK(last.pieces[0].multiplicity == 1);
    auto real = realize(t.ambient, last.pieces[0]);
    auto phi = find_isomorphism(real, cx);
    REQUIRE(phi.has_value());
    CHECK(oracle::is_isomorphism(real, cx, *phi));
    for (const auto& l : t.levels) {
      CHECK(l.checks.total() == 0);
      CHECK(l.checks.counts_preserved);
    }
    CHECK(t.stab_identity_violations == 0);
  }
}

TEST_CASE("uniform measure runs round trip too") {
  for (const auto& name : {"segment", "square", "path3", "tripod"}) {
    auto cx = fx::by_name(name);
    HierarchyOptions opt;
    opt.measure = MeasureKind::kUniform;
    auto t = run_hierarchy(cx, GroupAction::trivial(cx), opt);
    CHECK_MESSAGE(t.ok, (std::string(name) + ": " + t.error));
    // one copy of X per proper colouring in the support
    long long copies = 0;
    for (const auto& p : t.levels.back().pieces) {
      copies += p.multiplicity;
      CHECK(isomorphic(realize(t.ambient, p), cx));
    }
    CHECK(copies == static_cast<long long>(t.init.space.size()));
  }
}

TEST_CASE("group actions") {
  auto broom = fx::broom();
  auto tb = run_hierarchy(broom, fx::broom_swap(broom));
  CHECK(tb.ok);
  for (const auto& p : tb.levels.back().pieces) CHECK(isomorphic(realize(tb.ambient, p), broom));

  auto grid = fx::grid(2, 2);
  auto tg = run_hierarchy(grid, fx::grid_rotation(grid));
  CHECK(tg.ok);
  CHECK(tg.stab_identity_violations == 0);
}

TEST_CASE("stabiliser counting identity on the rotated square") {
  auto sq = fx::square();
  auto rot = fx::square_rotation(sq);
  auto a = Ambient::make(sq, rot, 1);
  auto ip = initial_pieces(a);
  auto counts = gluing_counts(a, ip.pieces);
  CHECK(stabiliser_identity_violations(a, ip, counts) == 0);
  CHECK(rot.size() == 4);
  // one vertex orbit; 4 edges times 2 colourings in the orbit measure, permuted freely
  CHECK(ip.anchors.size() == 1);
  CHECK(ip.space.size() == 2);
  CHECK(ip.system.rows.size() == 2);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(run_hierarchy(fx::cycle(4), GroupAction::trivial(fx::cycle(4))), PreconditionError);
  CHECK_THROWS_AS(run_hierarchy(fx::cube3_boundary(), GroupAction::trivial(fx::cube3_boundary())), PreconditionError);
  auto sq = fx::square();
  CHECK_THROWS_AS(run_hierarchy(sq, fx::square_rotation(sq)), PreconditionError);
}

TEST_CASE("trace text") {
  auto seg = fx::segment();
  auto t = run_hierarchy(seg, GroupAction::trivial(seg));
  auto text = format_trace(t);
  CHECK(text.rfind("cubecx hierarchy v1\n", 0) == 0);
  CHECK(text.find("note: quotient = X, K trivial") != std::string::npos);
  CHECK(text.find("result: ok") != std::string::npos);
  CHECK(format_level(t.ambient, t.levels[0]).rfind("level 1\n", 0) == 0);
}
