#include "cubecx/walls.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace cubecx {

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

WallSet::WallSet(const CubeComplex& cx) {
  const int nc = cx.num_cubes();
  UnionFind uf(nc);
  if (cx.dimension() >= 2) {
    for (int s : cx.cubes_by_dim()[2]) {
      uf.unite(cx.edge_at(s, 0, 0).edge, cx.edge_at(s, 2, 0).edge);
      uf.unite(cx.edge_at(s, 0, 1).edge, cx.edge_at(s, 1, 1).edge);
    }
  }
  wall_of_edge_.assign(nc, -1);
  std::map<int, int> root_to_wall;
  for (int e : cx.edges()) {
    int r = uf.find(e);
    auto it = root_to_wall.find(r);
    if (it == root_to_wall.end()) {
      it = root_to_wall.emplace(r, static_cast<int>(walls_.size())).first;
      walls_.push_back(Wall{});
      walls_.back().id = it->second;
    }
    wall_of_edge_[e] = it->second;
    walls_[it->second].dual_edges.push_back(e);
  }
  walls_of_cube_.assign(nc, {});
  std::vector<std::set<int>> carrier(walls_.size()), cverts(walls_.size());
  for (int c = 0; c < nc; ++c) {
    const Cube& cu = cx.cube(c);
    std::set<int> here;
    for (int k = 0; k < cu.dim; ++k) {
      int w = wall_of_edge_[cx.edge_at(c, 0, k).edge];
      walls_[w].midcubes.push_back({c, k});
      here.insert(w);
      carrier[w].insert(c);
      cverts[w].insert(cu.verts.begin(), cu.verts.end());
    }
    walls_of_cube_[c].assign(here.begin(), here.end());
  }
  inter_.assign(walls_.size(), std::vector<char>(walls_.size(), 0));
  for (int c = 0; c < nc; ++c)
    for (int a : walls_of_cube_[c])
      for (int b : walls_of_cube_[c])
        if (a != b) inter_[a][b] = 1;
  for (std::size_t w = 0; w < walls_.size(); ++w) {
    walls_[w].carrier_cubes.assign(carrier[w].begin(), carrier[w].end());
    walls_[w].carrier_vertices.assign(cverts[w].begin(), cverts[w].end());
  }
}

WallSet compute_walls(const CubeComplex& cx) { return WallSet(cx); }

std::vector<std::vector<int>> WallSet::wall_perms(const GroupAction& g) const {
  std::vector<std::vector<int>> out(g.size(), std::vector<int>(walls_.size()));
  for (int h = 0; h < g.size(); ++h)
    for (const auto& w : walls_) out[h][w.id] = wall_of_edge_[g.cube(h, w.dual_edges[0])];
  return out;
}

SidePartition side_partition(const CubeComplex& cx, const WallSet& ws, int w) {
  const Wall& wall = ws[w];
  UnionFind uf(cx.num_vertices());
  for (int c : wall.carrier_cubes) {
    const Cube& cu = cx.cube(c);
    for (int q = 0; q < (1 << cu.dim); ++q) {
      for (int k = 0; k < cu.dim; ++k) {
        if (q >> k & 1) continue;
        EdgeEnd e = cx.edge_at(c, q, k);
        if (ws.wall_of(e) == w) continue;
        uf.unite(cx.endpoint(e), cx.other_vertex(e));
      }
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int v : wall.carrier_vertices) groups[uf.find(v)].push_back(v);
  SidePartition sp;
  sp.wall = w;
  for (auto& [root, members] : groups) sp.classes.push_back(members);
  std::sort(sp.classes.begin(), sp.classes.end());
  sp.side.assign(cx.num_vertices(), 0);
  if (sp.classes.size() == 2) {
    for (int v : sp.classes[0]) sp.side[v] = 1;
    for (int v : sp.classes[1]) sp.side[v] = -1;
  } else {
    for (const auto& cl : sp.classes)
      for (int v : cl) sp.side[v] = 1;
  }
  return sp;
}

SideLabels label_sides(const CubeComplex& cx, const WallSet& ws, const GroupAction& g) {
  SideLabels out;
  const int n = ws.size();
  out.parts.resize(n);
  std::vector<SidePartition> base(n);
  for (int w = 0; w < n; ++w) base[w] = side_partition(cx, ws, w);
  auto perms = ws.wall_perms(g);
  std::vector<char> done(n, 0);
  for (int w = 0; w < n; ++w) {
    if (done[w]) continue;
    // w is the smallest wall of its orbit; its W+ holds its lowest carrier vertex.
    for (int h = 0; h < g.size(); ++h) {
      int w2 = perms[h][w];
      SidePartition sp = base[w2];
      if (sp.two_sided()) {
        std::vector<int> img_plus;
        for (int v : base[w].classes[0]) img_plus.push_back(g.vertex(h, v));
        std::sort(img_plus.begin(), img_plus.end());
        bool swap = img_plus != sp.classes[0];
        if (done[w2]) {
          if (out.parts[w2].classes[0] != (swap ? sp.classes[1] : sp.classes[0])) out.equivariant = false;
          continue;
        }
        if (swap) {
          std::swap(sp.classes[0], sp.classes[1]);
          for (int& s : sp.side) s = -s;
        }
      } else if (done[w2]) {
        continue;
      }
      out.parts[w2] = sp;
      done[w2] = 1;
    }
  }
  return out;
}

HalfSpacePair half_spaces(const CubeComplex& cx, const WallSet& ws, const SidePartition& part) {
  const int w = part.wall;
  if (!part.two_sided()) throw PreconditionError("wall " + std::to_string(w) + " is one-sided");
  HalfSpacePair hp;
  hp.wall = w;
  hp.side.assign(cx.num_vertices(), 0);
  std::deque<int> dq;
  for (int s = 0; s < 2; ++s)
    for (int v : part.classes[s]) {
      hp.side[v] = s == 0 ? 1 : -1;
      dq.push_back(v);
    }
  while (!dq.empty()) {
    int v = dq.front();
    dq.pop_front();
    for (const auto& e : cx.ends_at(v)) {
      if (ws.wall_of(e) == w) continue;
      int u = cx.other_vertex(e);
      if (hp.side[u] == 0) {
        hp.side[u] = hp.side[v];
        dq.push_back(u);
      } else if (hp.side[u] != hp.side[v]) {
        throw PreconditionError("wall " + std::to_string(w) +
                                " does not separate: a path avoiding it joins its two sides (complex not simply connected)");
      }
    }
  }
  for (int v = 0; v < cx.num_vertices(); ++v) {
    if (hp.side[v] == 0) throw PreconditionError("complex is disconnected");
    (hp.side[v] > 0 ? hp.plus : hp.minus).push_back(v);
  }
  return hp;
}

HalfSpaceTable::HalfSpaceTable(const CubeComplex& cx, const WallSet& ws, const SideLabels& labels) {
  for (int w = 0; w < ws.size(); ++w) pairs_.push_back(half_spaces(cx, ws, labels.parts[w]));
}

HalfSpaceTable::HalfSpaceTable(const CubeComplex& cx, const WallSet& ws) {
  for (int w = 0; w < ws.size(); ++w) pairs_.push_back(half_spaces(cx, ws, side_partition(cx, ws, w)));
}

std::vector<int> separating_walls(const HalfSpaceTable& hs, int x, int y) {
  std::vector<int> r;
  for (int w = 0; w < hs.size(); ++w)
    if (hs.side(w, x) != hs.side(w, y)) r.push_back(w);
  return r;
}

GeodesicReport check_geodesic(const CubeComplex& cx, const WallSet& ws, const HalfSpaceTable& hs, int start,
                              const std::vector<int>& edges) {
  GeodesicReport rep;
  rep.start = start;
  int cur = start;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    int e = edges[i];
    if (!cx.is_edge(e)) throw PreconditionError("path entry " + std::to_string(i) + " is not an edge");
    const auto& vs = cx.cube(e).verts;
    if (vs[0] == cur) {
      cur = vs[1];
    } else if (vs[1] == cur) {
      cur = vs[0];
    } else {
      throw PreconditionError("path is disconnected at entry " + std::to_string(i));
    }
    rep.crossings[ws.wall_of_edge(e)]++;
  }
  rep.end = cur;
  rep.length = static_cast<int>(edges.size());
  rep.separating = separating_walls(hs, start, cur);
  bool ok = rep.length == static_cast<int>(rep.separating.size()) && rep.crossings.size() == rep.separating.size();
  if (ok)
    for (int w : rep.separating) ok = ok && rep.crossings.count(w) && rep.crossings.at(w) == 1;
  rep.geodesic = ok;
  return rep;
}

GeodesicReport check_geodesic_walk(const CubeComplex& cx, const WallSet& ws, const HalfSpaceTable& hs,
                                   const std::vector<int>& walk) {
  if (walk.empty()) throw PreconditionError("empty walk");
  std::vector<int> edges;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    int found = -1, count = 0;
    for (const auto& e : cx.ends_at(walk[i]))
      if (cx.other_vertex(e) == walk[i + 1]) {
        found = e.edge;
        ++count;
      }
    if (count == 0) throw PreconditionError("walk is disconnected at step " + std::to_string(i));
    edges.push_back(found);
  }
  return check_geodesic(cx, ws, hs, walk[0], edges);
}

HellyResult check_helly(const CubeComplex& cx, const WallSet& ws, const std::vector<int>& walls) {
  for (std::size_t i = 0; i < walls.size(); ++i)
    for (std::size_t j = i + 1; j < walls.size(); ++j)
      if (walls[i] != walls[j] && !ws.intersect(walls[i], walls[j]))
        throw PreconditionError("walls " + std::to_string(walls[i]) + " and " + std::to_string(walls[j]) +
                                " do not intersect");
  HellyResult best;
  int best_dim = 1 << 20;
  for (int c = 0; c < cx.num_cubes(); ++c) {
    const auto& here = ws.walls_of_cube(c);
    bool all = std::all_of(walls.begin(), walls.end(),
                           [&](int w) { return std::binary_search(here.begin(), here.end(), w); });
    if (all && cx.cube(c).dim < best_dim) {
      best_dim = cx.cube(c).dim;
      best = {true, c};
    }
  }
  return best;
}

std::string walls_dot(const CubeComplex& cx, const WallSet& ws) {
  std::ostringstream os;
  os << "graph walls {\n";
  for (const auto& w : ws.all()) {
    os << "  w" << w.id << " [label=\"W" << w.id << " (" << w.dual_edges.size() << ")\"];\n";
  }
  for (int a = 0; a < ws.size(); ++a)
    for (int b = a + 1; b < ws.size(); ++b)
      if (ws.intersect(a, b)) os << "  w" << a << " -- w" << b << ";\n";
  os << "}\n";
  (void)cx;
  return os.str();
}

std::string half_space_dot(const CubeComplex& cx, const HalfSpacePair& hp) {
  std::ostringstream os;
  os << "graph halfspaces {\n";
  for (int v = 0; v < cx.num_vertices(); ++v)
    os << "  v" << v << " [label=\"" << cx.name(v) << "\", color=" << (hp.side[v] > 0 ? "red" : "blue") << "];\n";
  for (int e : cx.edges()) {
    const auto& vs = cx.cube(e).verts;
    os << "  v" << vs[0] << " -- v" << vs[1];
    if (hp.side[vs[0]] != hp.side[vs[1]]) os << " [style=dashed]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace cubecx
