#include "cubecx/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace cubecx {

int WallGraph::max_degree() const {
  int k = 0;
  for (const auto& a : adj) k = std::max(k, static_cast<int>(a.size()));
  return k;
}

bool WallGraph::adjacent(int a, int b) const { return std::binary_search(adj[a].begin(), adj[a].end(), b); }

std::vector<std::pair<int, int>> WallGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < size(); ++a)
    for (int b : adj[a])
      if (a < b) out.push_back({a, b});
  return out;
}

WallGraph WallGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  WallGraph g;
  g.adj.assign(n, {});
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw PreconditionError("graph edge out of range");
    if (a == b) throw PreconditionError("graph has a loop at node " + std::to_string(a));
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  }
  for (auto& l : g.adj) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return g;
}

std::vector<std::vector<int>> wall_distances(const CubeComplex& cx, const WallSet& ws) {
  const int n = ws.size();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a) {
    // multi-source BFS from the carrier of a
    std::vector<int> dist(cx.num_vertices(), -1);
    std::deque<int> dq;
    for (int v : ws[a].carrier_vertices) {
      dist[v] = 0;
      dq.push_back(v);
    }
    while (!dq.empty()) {
      int v = dq.front();
      dq.pop_front();
      for (int u : cx.neighbours(v))
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          dq.push_back(u);
        }
    }
    for (int b = 0; b < n; ++b) {
      int best = -1;
      for (int v : ws[b].carrier_vertices)
        if (dist[v] >= 0 && (best < 0 || dist[v] < best)) best = dist[v];
      d[a][b] = (a != b && ws.intersect(a, b)) ? 0 : best;
    }
  }
  return d;
}

WallGraph build_gamma(const CubeComplex& cx, const WallSet& ws, int radius) {
  if (radius < 0) throw PreconditionError("radius must be non-negative");
  auto d = wall_distances(cx, ws);
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < ws.size(); ++a)
    for (int b = a + 1; b < ws.size(); ++b)
      if (d[a][b] >= 0 && d[a][b] <= radius) edges.push_back({a, b});
  WallGraph g = WallGraph::from_edges(ws.size(), edges);
  g.radius = radius;
  return g;
}

Coloring greedy_coloring(const WallGraph& g) {
  Coloring c(g.size(), 0);
  for (int v = 0; v < g.size(); ++v) {
    std::set<int> used;
    for (int u : g.adj[v])
      if (c[u]) used.insert(c[u]);
    int col = 1;
    while (used.count(col)) ++col;
    c[v] = col;
  }
  return c;
}

bool is_proper(const WallGraph& g, const Coloring& c) {
  if (static_cast<int>(c.size()) != g.size()) return false;
  for (auto [a, b] : g.edges())
    if (c[a] == c[b]) return false;
  return true;
}

int num_colors(const Coloring& c) { return c.empty() ? 0 : *std::max_element(c.begin(), c.end()); }

Coloring reduce_coloring(const WallGraph& g, const Coloring& c, int n) {
  if (n <= g.max_degree() + 1)
    throw PreconditionError("p_n needs n > k+1 (n = " + std::to_string(n) + ", k = " + std::to_string(g.max_degree()) +
                            ")");
  if (static_cast<int>(c.size()) != g.size()) throw PreconditionError("colouring has the wrong length");
  for (int x : c)
    if (x < 1 || x > n) throw PreconditionError("colour outside [1, n]");
  Coloring out = c;
  for (int v = 0; v < g.size(); ++v) {
    if (c[v] != n) continue;
    std::set<int> used;
    for (int u : g.adj[v]) used.insert(c[u]);
    int col = 1;
    while (used.count(col)) ++col;
    out[v] = col;
  }
  return out;
}

std::vector<Coloring> proper_colorings(const WallGraph& g, int n, std::size_t cap) {
  std::vector<Coloring> out;
  Coloring c(g.size(), 0);
  auto rec = [&](auto&& self, int v) -> void {
    if (v == g.size()) {
      if (out.size() >= cap) throw PreconditionError("more than " + std::to_string(cap) + " proper colourings");
      out.push_back(c);
      return;
    }
    for (int col = 1; col <= n; ++col) {
      bool ok = true;
      for (int u : g.adj[v])
        if (u < v && c[u] == col) ok = false;
      if (!ok) continue;
      c[v] = col;
      self(self, v + 1);
    }
    c[v] = 0;
  };
  rec(rec, 0);
  return out;
}

Coloring act(const std::vector<int>& perm, const Coloring& c) {
  Coloring out(c.size());
  for (std::size_t w = 0; w < c.size(); ++w) out[perm[w]] = c[w];
  return out;
}

std::vector<std::vector<int>> graph_automorphisms(const WallGraph& g) {
  std::vector<int> p(g.size());
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  auto edges = g.edges();
  do {
    bool ok = true;
    for (auto [a, b] : edges)
      if (!g.adjacent(p[a], p[b])) {
        ok = false;
        break;
      }
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Rational Measure::total() const {
  Rational t = 0;
  for (const auto& [c, m] : mass) t += m;
  return t;
}

Rational Measure::of(const Coloring& c) const {
  auto it = mass.find(c);
  return it == mass.end() ? Rational(0) : it->second;
}

Measure point_measure(const Coloring& c) {
  Measure m;
  m.mass[c] = 1;
  return m;
}

Measure uniform_measure(const std::vector<Coloring>& space) {
  if (space.empty()) throw PreconditionError("uniform measure on an empty space");
  Measure m;
  for (const auto& c : space) m.mass[c] += Rational(1, static_cast<long long>(space.size()));
  return m;
}

Measure uniform_product_measure(int nodes, int n) {
  if (nodes < 0 || n < 1) throw PreconditionError("bad product measure parameters");
  double size = std::pow(double(n), nodes);
  if (size > 5e6) throw PreconditionError("product space too large to enumerate");
  Measure m;
  Int total = 1;
  for (int i = 0; i < nodes; ++i) total *= n;
  Rational p(Int(1), total);
  Coloring c(nodes, 1);
  while (true) {
    m.mass[c] = p;
    int i = 0;
    while (i < nodes && c[i] == n) c[i++] = 1;
    if (i == nodes) break;
    ++c[i];
  }
  return m;
}

Measure orbit_measure(const std::vector<std::vector<int>>& perms, const Coloring& c) {
  Measure m;
  Rational p(1, static_cast<long long>(perms.size()));
  for (const auto& g : perms) m.mass[act(g, c)] += p;
  return m;
}

Measure push_forward(const Measure& m, const WallGraph& g, int n) {
  Measure out;
  for (const auto& [c, p] : m.mass) out.mass[reduce_coloring(g, c, n)] += p;
  return out;
}

Rational weight(const Measure& m, const std::vector<std::pair<int, int>>& edge_reps) {
  Rational w = 0;
  for (auto [a, b] : edge_reps)
    for (const auto& [c, p] : m.mass)
      if (c[a] == c[b]) w += p;
  return w;
}

std::vector<std::pair<int, int>> edge_orbit_reps(const WallGraph& g, const std::vector<std::vector<int>>& perms) {
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, int>> reps;
  for (auto e : g.edges()) {
    if (seen.count(e)) continue;
    reps.push_back(e);
    for (const auto& p : perms) {
      int a = p[e.first], b = p[e.second];
      seen.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return reps;
}

bool is_invariant(const Measure& m, const std::vector<std::vector<int>>& perms) {
  for (const auto& p : perms)
    for (const auto& [c, mass] : m.mass)
      if (m.of(act(p, c)) != mass) return false;
  return true;
}

Measure exact_invariant_measure(const WallGraph& g, const std::vector<std::vector<int>>& perms, std::size_t cap) {
  auto space = proper_colorings(g, g.max_degree() + 1, cap);
  if (space.empty()) throw IntegrityError("no proper (k+1)-colouring found");
  Measure m = uniform_measure(space);
  if (!is_invariant(m, perms)) throw IntegrityError("uniform measure on proper colourings is not invariant");
  return m;
}

std::vector<int> gamma_ball(const WallGraph& g, int center, int radius) {
  std::vector<int> dist(g.size(), -1);
  dist[center] = 0;
  std::deque<int> dq{center};
  std::vector<int> out;
  while (!dq.empty()) {
    int v = dq.front();
    dq.pop_front();
    out.push_back(v);
    if (dist[v] == radius) continue;
    for (int u : g.adj[v])
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        dq.push_back(u);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool ColoringClass::contains(const Coloring& c) const {
  for (auto [w, col] : pattern)
    if (w >= static_cast<int>(c.size()) || c[w] != col) return false;
  return true;
}

std::vector<int> ColoringClass::support() const {
  std::vector<int> s;
  for (auto [w, col] : pattern) s.push_back(w);
  return s;
}

ColoringClass class_of_wall(const WallGraph& g, const Coloring& c, int wall) {
  ColoringClass k;
  k.kind = ColoringClass::kWall;
  k.anchor = wall;
  for (int w : gamma_ball(g, wall, c.at(wall))) k.pattern[w] = c[w];
  return k;
}

ColoringClass class_of_vertex(const CubeComplex& cx, const WallSet& ws, const WallGraph& g, const Coloring& c, int x) {
  ColoringClass k;
  k.kind = ColoringClass::kVertex;
  k.anchor = x;
  for (const auto& e : cx.ends_at(x)) {
    auto kw = class_of_wall(g, c, ws.wall_of(e));
    k.pattern.insert(kw.pattern.begin(), kw.pattern.end());
  }
  return k;
}

ColoringClass act_class(const std::vector<int>& vertex_perm, const std::vector<int>& wall_perm, const ColoringClass& k) {
  ColoringClass out;
  out.kind = k.kind;
  out.anchor = k.kind == ColoringClass::kWall ? wall_perm.at(k.anchor) : vertex_perm.at(k.anchor);
  for (auto [w, col] : k.pattern) out.pattern[wall_perm.at(w)] = col;
  return out;
}

std::vector<std::vector<int>> class_orbits(const std::vector<ColoringClass>& classes,
                                           const std::vector<std::vector<int>>& vertex_perms,
                                           const std::vector<std::vector<int>>& wall_perms) {
  std::map<ColoringClass, int> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index.emplace(classes[i], static_cast<int>(i));
  std::vector<int> orbit(classes.size(), -1);
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (orbit[i] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    for (std::size_t g = 0; g < wall_perms.size(); ++g) {
      auto it = index.find(act_class(vertex_perms[g], wall_perms[g], classes[i]));
      if (it != index.end() && orbit[it->second] < 0) {
        orbit[it->second] = id;
        out.back().push_back(it->second);
      }
    }
    if (orbit[i] < 0) {
      orbit[i] = id;
      out.back().push_back(static_cast<int>(i));
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

std::string gamma_dot(const WallGraph& g, const Coloring* c) {
  std::ostringstream os;
  os << "graph gamma {\n";
  for (int v = 0; v < g.size(); ++v) {
    os << "  w" << v << " [label=\"W" << v;
    if (c) os << " : " << (*c)[v];
    os << "\"];\n";
  }
  for (auto [a, b] : g.edges()) os << "  w" << a << " -- w" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace cubecx
