#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cubecx/assembly.hpp"
#include "cubecx/fixtures.hpp"
#include "cubecx/gluing.hpp"

using namespace cubecx;
namespace fx = cubecx::fixtures;

namespace {

std::vector<Rational> rats(std::vector<std::string> v) {
  std::vector<Rational> out;
  for (const auto& s : v) out.push_back(parse_rational(s));
  return out;
}

IntMatrix ints(std::vector<std::vector<int>> m) {
  IntMatrix out;
  for (const auto& r : m) out.emplace_back(r.begin(), r.end());
  return out;
}

std::vector<Int> ivec(std::vector<int> v) { return {v.begin(), v.end()}; }

int rank(const IntMatrix& a) {
  std::vector<std::vector<Rational>> m;
  for (const auto& r : a) m.emplace_back(r.begin(), r.end());
  return static_cast<int>(rref(m).size());
}

std::vector<Template> templates_of(const InitialPieces& ip) { return ip.system.templates; }

}  // namespace

TEST_CASE("rationals parse and print") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(2)) == "2");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("seed alpha") {
  std::vector<std::pair<int, int>> e = {{0, 1}};
  auto k2 = WallGraph::from_edges(2, e);
  Coloring c1 = {1, 2}, c2 = {2, 1};
  auto mu = uniform_measure({c1, c2});
  AnchorClasses an{0, 1, {class_of_wall(k2, c1, 0), class_of_wall(k2, c2, 0)}};
  CHECK(seed_alpha(mu, {an}) == rats({"1/2", "1/2"}));

  ColoringClass everything;
  AnchorClasses all{0, 1, {everything}};
  CHECK(seed_alpha(mu, {all}) == rats({"1"}));
  AnchorClasses fixed{0, 2, {everything}};
  CHECK(seed_alpha(mu, {fixed}) == rats({"1/2"}));
}

TEST_CASE("segment gives one balance equation") {
  auto seg = fx::segment();
  auto g = GroupAction::trivial(seg);
  auto a = Ambient::make(seg, g, 1);
  auto ip = initial_pieces(a);
  CHECK(ip.system.templates.size() == 2);
  auto m = ip.system.matrix();
  REQUIRE(m.size() == 1);
  CHECK((m[0] == ivec({1, -1}) || m[0] == ivec({-1, 1})));
}

TEST_CASE("square with distinct wall colours balances corners across every edge") {
  auto sq = fx::square();
  auto g = GroupAction::trivial(sq);
  auto a = Ambient::make(sq, g, 1);
  auto ip = initial_pieces(a);
  CHECK(ip.base_coloring == Coloring{1, 2});
  REQUIRE(ip.system.templates.size() == 4);
  // rows are keyed by edges: each edge row puts its W+ endpoint's corner on the
  // plus side and its W- endpoint's corner on the minus side
  CHECK(ip.system.rows.size() == 4);
  for (const auto& row : ip.system.rows) {
    int e = row.key.edge;
    for (std::size_t i = 0; i < 4; ++i) {
      int x = ip.system.templates[i].anchor;
      CHECK(row.plus[i] == (x == a.endpoint_on(e, 1) ? 1 : 0));
      CHECK(row.minus[i] == (x == a.endpoint_on(e, -1) ? 1 : 0));
    }
  }
  // a = b, c = d, a = c, b = d: one free multiplicity
  CHECK(rank(ip.system.matrix()) == 3);
  CHECK(ip.kernel.w == ivec({1, 1, 1, 1}));
}

TEST_CASE("no templates give all-zero rows") {
  auto sq = fx::square();
  auto g = GroupAction::trivial(sq);
  auto a = Ambient::make(sq, g, 1);
  auto sys = build_system(a, {}, {Coloring{1, 2}});
  CHECK_FALSE(sys.rows.empty());
  for (const auto& row : sys.matrix())
    for (const auto& x : row) CHECK(x == 0);
}

TEST_CASE("seeded counts equal the measure of the edge class") {
  for (const auto& name : {"segment", "square", "path3", "tripod", "grid2x1", "cube3"}) {
    auto cx = fx::by_name(name);
    auto g = GroupAction::trivial(cx);
    auto a = Ambient::make(cx, g, cx.diameter());
    for (auto kind : {MeasureKind::kOrbit, MeasureKind::kUniform}) {
      HierarchyOptions opt;
      opt.measure = kind;
      auto ip = initial_pieces(a, opt);
      for (const auto& row : ip.system.rows) {
        Rational mplus = 0, mminus = 0, mu = 0;
        for (std::size_t i = 0; i < ip.alpha.size(); ++i) {
          mplus += Rational(row.plus[i]) * ip.alpha[i];
          mminus += Rational(row.minus[i]) * ip.alpha[i];
        }
        for (const auto& [c, p] : ip.measure.mass)
          if (row.key.cls.contains(c)) mu += p;
        CHECK(mplus == mu);
        CHECK(mminus == mu);
      }
      CHECK(multiply(ip.system.matrix(), ip.alpha) == std::vector<Rational>(ip.system.rows.size(), 0));
    }
  }
}

TEST_CASE("coefficients are non-negative and duplicated templates duplicate columns") {
  auto cx = fx::grid(2, 1);
  auto g = GroupAction::trivial(cx);
  auto a = Ambient::make(cx, g, cx.diameter());
  auto ip = initial_pieces(a);
  for (const auto& row : ip.system.rows)
    for (std::size_t i = 0; i < row.plus.size(); ++i) {
      CHECK(row.plus[i] >= 0);
      CHECK(row.minus[i] >= 0);
    }
  auto t = templates_of(ip);
  t.push_back(t[0]);
  auto sys = build_system(a, t, ip.space);
  REQUIRE(sys.rows.size() == ip.system.rows.size());
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    CHECK(sys.rows[r].plus.back() == sys.rows[r].plus[0]);
    CHECK(sys.rows[r].minus.back() == sys.rows[r].minus[0]);
  }
  // multiplicity t on one copy equals multiplicity 1 on t copies
  auto m1 = ip.system.matrix(), m2 = sys.matrix();
  std::vector<Int> w1(t.size() - 1, 0), w2(t.size(), 0);
  w1[0] = 2;
  w2[0] = 1;
  w2.back() = 1;
  CHECK(multiply(m1, w1) == multiply(m2, w2));
}

TEST_CASE("kernel solver examples") {
  auto r1 = nonneg_integer_kernel(ints({{1, -1}}), rats({"1", "1"}));
  CHECK(r1.w == ivec({1, 1}));
  auto r2 = nonneg_integer_kernel(ints({{2, -3}}), rats({"3/2", "1"}));
  CHECK(r2.w == ivec({3, 2}));
  auto r3 = nonneg_integer_kernel(ints({{1, 1, -1}, {0, 1, -1}}), rats({"0", "1", "1"}));
  CHECK(r3.w == ivec({0, 1, 1}));
  CHECK(r3.support == 2);
}

TEST_CASE("kernel solver rejects bad hints") {
  CHECK_THROWS_AS(nonneg_integer_kernel(ints({{1, -1}}), rats({"1", "2"})), PreconditionError);
  CHECK_THROWS_AS(nonneg_integer_kernel(ints({{1, 1}}), rats({"1", "-1"})), PreconditionError);
  CHECK_THROWS_AS(nonneg_integer_kernel(ints({{1, -1}}), rats({"0", "0"})), PreconditionError);
  CHECK_THROWS_AS(nonneg_integer_kernel(ints({{1, -1}}), rats({"1"})), PreconditionError);
}

TEST_CASE("kernel basis spans the kernel") {
  std::vector<std::vector<Rational>> m = {{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 1, 1}};
  auto basis = kernel_basis(m);
  CHECK(basis.size() == 2);
  for (const auto& b : basis)
    for (const auto& row : m) {
      Rational s = 0;
      for (std::size_t i = 0; i < row.size(); ++i) s += row[i] * b[i];
      CHECK(s == 0);
    }
}

TEST_CASE("kernel solver on planted systems") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> ent(-5, 5), dim(1, 8), cols(2, 12), wv(0, 4);
  for (int trial = 0; trial < 100; ++trial) {
    int m = dim(rng), n = cols(rng);
    std::vector<int> planted(n);
    for (int& x : planted) x = wv(rng);
    planted[0] = std::max(planted[0], 1);
    IntMatrix a(m, std::vector<Int>(n));
    for (int r = 0; r < m; ++r) {
      long long s = 0;
      for (int c = 1; c < n; ++c) {
        int x = ent(rng);
        a[r][c] = x;
        s += x * planted[c];
      }
      // close the row on column 0 by moving weight, keeping entries in range when possible
      a[r][0] = 0;
      if (s % planted[0] == 0 && std::abs(s / planted[0]) <= 5) a[r][0] = -s / planted[0];
      else
        for (int c = 1; c < n; ++c) a[r][c] = 0;
    }
    std::vector<Rational> hint(planted.begin(), planted.end());
    auto res = nonneg_integer_kernel(a, hint);
    bool nonzero = false;
    for (const auto& x : res.w) {
      CHECK(x >= 0);
      nonzero = nonzero || x > 0;
    }
    CHECK(nonzero);
    for (const auto& y : multiply(a, res.w)) CHECK(y == 0);
    for (int i = 0; i < n; ++i)
      if (planted[i] == 0) CHECK(res.w[i] == 0);
  }
}
