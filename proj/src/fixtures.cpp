#include "cubecx/fixtures.hpp"

#include <map>

namespace cubecx::fixtures {

namespace {

CubeComplex closed(std::vector<std::string> vertices, std::vector<RawCube> top) {
  RawComplex raw{std::move(vertices), std::move(top)};
  return CubeComplex::from_raw(auto_close(raw));
}

std::vector<std::string> numbered(const std::string& prefix, int n) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
  return v;
}

}  // namespace

CubeComplex point() { return CubeComplex({"v"}, {}); }

CubeComplex segment() { return closed({"a", "b"}, {{1, {"a", "b"}, {}}}); }

CubeComplex square() { return closed({"a", "b", "c", "d"}, {{2, {"a", "b", "c", "d"}, {}}}); }

CubeComplex cube(int n) {
  std::vector<std::string> names;
  for (int q = 0; q < (1 << n); ++q) {
    std::string s;
    for (int i = n - 1; i >= 0; --i) s += (q >> i & 1) ? '1' : '0';
    names.push_back(n == 0 ? "v" : s);
  }
  if (n == 0) return CubeComplex(names, {});
  return closed(names, {{n, names, {}}});
}

CubeComplex path(int edges) {
  auto v = numbered("v", edges + 1);
  std::vector<RawCube> top;
  for (int i = 0; i < edges; ++i) top.push_back({1, {v[i], v[i + 1]}, {}});
  return closed(v, top);
}

CubeComplex tripod() {
  return closed({"o", "p", "q", "r"}, {{1, {"o", "p"}, {}}, {1, {"o", "q"}, {}}, {1, {"o", "r"}, {}}});
}

CubeComplex grid(int m, int n) {
  std::vector<std::string> v;
  auto name = [](int x, int y) { return "v" + std::to_string(x) + "_" + std::to_string(y); };
  for (int y = 0; y <= n; ++y)
    for (int x = 0; x <= m; ++x) v.push_back(name(x, y));
  std::vector<RawCube> top;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < m; ++x) top.push_back({2, {name(x, y), name(x + 1, y), name(x, y + 1), name(x + 1, y + 1)}, {}});
  return closed(v, top);
}

CubeComplex cycle(int n) {
  auto v = numbered("v", n);
  std::vector<RawCube> top;
  for (int i = 0; i < n; ++i) top.push_back({1, {v[i], v[(i + 1) % n]}, {}});
  return closed(v, top);
}

CubeComplex torus1v() {
  // loops 0 (horizontal) and 1 (vertical); square faces: coord 0 fixed -> vertical loop
  RawComplex raw{{"v"},
                 {{1, {"v", "v"}, {}}, {1, {"v", "v"}, {}}, {2, {"v", "v", "v", "v"}, {1, 1, 0, 0}}}};
  return CubeComplex::from_raw(raw);
}

CubeComplex wedge_of_loops() {
  RawComplex raw{{"v"}, {{1, {"v", "v"}, {}}, {1, {"v", "v"}, {}}}};
  return CubeComplex::from_raw(raw);
}

CubeComplex mobius_square() {
  // edges: 0 = left/right [p,q], 1 = bottom [p,q], 2 = top [q,p]
  RawComplex raw{{"p", "q"},
                 {{1, {"p", "q"}, {}}, {1, {"p", "q"}, {}}, {1, {"q", "p"}, {}}, {2, {"p", "q", "q", "p"}, {0, 0, 1, 2}}}};
  return CubeComplex::from_raw(raw);
}

CubeComplex mobius_strip() {
  // b0 b1 b2 / t0 t1 t2 with b2 = t0 and t2 = b0
  return closed({"b0", "b1", "t0", "t1"}, {{2, {"b0", "b1", "t0", "t1"}, {}}, {2, {"b1", "t0", "t1", "b0"}, {}}});
}

CubeComplex double_corner() {
  return closed({"a", "b", "d", "x", "y"}, {{2, {"a", "b", "d", "x"}, {}}, {2, {"a", "b", "d", "y"}, {}}});
}

CubeComplex inter_osculation() {
  // 3x3 vertices a b c / d e f / g h i minus the square e f h i, with h renamed f
  return closed({"a", "b", "c", "d", "e", "f", "g"},
                {{2, {"a", "b", "d", "e"}, {}}, {2, {"b", "c", "e", "f"}, {}}, {2, {"d", "e", "g", "f"}, {}}});
}

CubeComplex cube3_boundary() {
  auto c = cube(3);
  auto raw = c.to_raw();
  std::vector<RawCube> keep;
  for (const auto& rc : raw.cubes)
    if (rc.dim < 3) keep.push_back(RawCube{rc.dim, rc.verts, {}});
  return CubeComplex::from_raw(RawComplex{raw.vertices, keep});
}

CubeComplex broom() {
  return closed({"o", "a1", "a2", "a3", "b", "c"}, {{1, {"o", "a1"}, {}},
                                                   {1, {"a1", "a2"}, {}},
                                                   {1, {"a2", "a3"}, {}},
                                                   {1, {"a3", "b"}, {}},
                                                   {1, {"a3", "c"}, {}}});
}

namespace {

const std::map<std::string, CubeComplex (*)()>& table() {
  static const std::map<std::string, CubeComplex (*)()> t = {
      {"point", point},
      {"segment", segment},
      {"square", square},
      {"cube3", [] { return cube(3); }},
      {"cube4", [] { return cube(4); }},
      {"path3", [] { return path(3); }},
      {"path4", [] { return path(4); }},
      {"tripod", tripod},
      {"tripod_x_segment", [] { return product(tripod(), segment()); }},
      {"tripod_x_tripod", [] { return product(tripod(), tripod()); }},
      {"grid2x1", [] { return grid(2, 1); }},
      {"grid2x2", [] { return grid(2, 2); }},
      {"grid3x2", [] { return grid(3, 2); }},
      {"cube3_subdivided", [] { return subdivide(cube(3)); }},
      {"square_subdivided", [] { return subdivide(square()); }},
      {"broom", broom},
      {"cycle4", [] { return cycle(4); }},
      {"triangle", [] { return cycle(3); }},
      {"torus1v", torus1v},
      {"wedge_of_loops", wedge_of_loops},
      {"mobius_square", mobius_square},
      {"mobius_strip", mobius_strip},
      {"double_corner", double_corner},
      {"inter_osculation", inter_osculation},
      {"cube3_boundary", cube3_boundary},
  };
  return t;
}

}  // namespace

CubeComplex by_name(const std::string& name) {
  auto it = table().find(name);
  if (it == table().end()) throw PreconditionError("unknown fixture '" + name + "'");
  return it->second();
}

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& [k, f] : table()) out.push_back(k);
  return out;
}

std::vector<std::string> cat0_names() {
  return {"point",  "segment",          "square",          "cube3",   "cube4",   "path3",   "path4",
          "tripod", "tripod_x_segment", "tripod_x_tripod", "grid2x1", "grid2x2", "grid3x2", "cube3_subdivided",
          "square_subdivided", "broom"};
}

std::vector<std::string> pathology_names() { return {"torus1v", "mobius_square", "inter_osculation"}; }

namespace {

std::vector<int> perm_from(const CubeComplex& cx, const std::map<std::string, std::string>& m) {
  std::vector<int> p(cx.num_vertices());
  for (int v = 0; v < cx.num_vertices(); ++v) {
    auto it = m.find(cx.name(v));
    p[v] = it == m.end() ? v : cx.vertex(it->second);
  }
  return p;
}

}  // namespace

GroupAction broom_swap(const CubeComplex& b) {
  return GroupAction::generate(b, {perm_from(b, {{"b", "c"}, {"c", "b"}})});
}

GroupAction square_rotation(const CubeComplex& s) {
  return GroupAction::generate(s, {perm_from(s, {{"a", "b"}, {"b", "d"}, {"d", "c"}, {"c", "a"}})});
}

GroupAction grid_rotation(const CubeComplex& g) {
  // (x, y) -> (2 - y, x)
  std::map<std::string, std::string> m;
  for (int x = 0; x <= 2; ++x)
    for (int y = 0; y <= 2; ++y)
      m["v" + std::to_string(x) + "_" + std::to_string(y)] = "v" + std::to_string(2 - y) + "_" + std::to_string(x);
  return GroupAction::generate(g, {perm_from(g, m)});
}

}  // namespace cubecx::fixtures
