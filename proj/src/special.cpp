#include "cubecx/special.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace cubecx {

namespace {

// Edge-end pairs at v that form a square corner.
std::set<std::pair<EdgeEnd, EdgeEnd>> square_corners(const CubeComplex& cx, int v) {
  std::set<std::pair<EdgeEnd, EdgeEnd>> out;
  for (int c : cx.cubes_at(v)) {
    const Cube& cu = cx.cube(c);
    if (cu.dim != 2) continue;
    for (int q = 0; q < 4; ++q) {
      if (cu.verts[q] != v) continue;
      EdgeEnd a = cx.edge_at(c, q, 0), b = cx.edge_at(c, q, 1);
      out.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return out;
}

std::vector<int> path_to_root(const std::vector<int>& parent, int v) {
  std::vector<int> p{v};
  while (parent[v] >= 0) {
    v = parent[v];
    p.push_back(v);
  }
  return p;
}

}  // namespace

SpecialnessReport check_c_special(const CubeComplex& cx) { return check_c_special(cx, WallSet(cx)); }

SpecialnessReport check_c_special(const CubeComplex& cx, const WallSet& ws) {
  SpecialnessReport r;
  r.simple_witness = is_simple(cx);
  r.simple = r.simple_witness.simple;
  for (int v = 0; v < cx.num_vertices(); ++v) {
    const auto& ends = cx.ends_at(v);
    auto corners = square_corners(cx, v);
    for (std::size_t i = 0; i < ends.size(); ++i) {
      for (std::size_t j = i + 1; j < ends.size(); ++j) {
        EdgeEnd a = ends[i], b = ends[j];
        int wa = ws.wall_of(a), wb = ws.wall_of(b);
        if (wa == wb) {
          r.cond1_violations.push_back({v, a, b, wa, wb});
        } else if (ws.intersect(wa, wb) && !corners.count({std::min(a, b), std::max(a, b)})) {
          r.cond2_violations.push_back({v, a, b, wa, wb});
        }
      }
    }
  }
  // BFS two-colouring of the 1-skeleton
  std::vector<int> colour(cx.num_vertices(), -1), parent(cx.num_vertices(), -1);
  for (int s = 0; s < cx.num_vertices() && r.bipartite; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::deque<int> dq{s};
    while (!dq.empty() && r.bipartite) {
      int u = dq.front();
      dq.pop_front();
      for (const auto& e : cx.ends_at(u)) {
        int w = cx.other_vertex(e);
        if (colour[w] < 0) {
          colour[w] = 1 - colour[u];
          parent[w] = u;
          dq.push_back(w);
        } else if (colour[w] == colour[u]) {
          r.bipartite = false;
          auto pu = path_to_root(parent, u), pw = path_to_root(parent, w);
          // trim the common tail to the lowest common ancestor
          while (pu.size() > 1 && pw.size() > 1 && pu[pu.size() - 2] == pw[pw.size() - 2]) {
            pu.pop_back();
            pw.pop_back();
          }
          // cycle: u ... lca ... w u
          std::vector<int> cyc(pu.begin(), pu.end());
          if (u != w) {
            for (auto it = pw.rbegin() + 1; it != pw.rend(); ++it) cyc.push_back(*it);
          }
          cyc.push_back(u);
          r.odd_cycle = cyc;
          break;
        }
      }
    }
  }
  r.verdict = r.simple && r.cond1_violations.empty() && r.cond2_violations.empty() && r.bipartite;
  return r;
}

bool verify_cond1_witness(const CubeComplex& cx, const WallSet& ws, const EndPair& p) {
  if (cx.endpoint(p.a) != p.vertex || cx.endpoint(p.b) != p.vertex || p.a == p.b) return false;
  return ws.wall_of(p.a) == ws.wall_of(p.b);
}

bool verify_cond2_witness(const CubeComplex& cx, const WallSet& ws, const EndPair& p) {
  if (cx.endpoint(p.a) != p.vertex || cx.endpoint(p.b) != p.vertex) return false;
  int wa = ws.wall_of(p.a), wb = ws.wall_of(p.b);
  if (wa == wb) return false;
  // the walls meet in some cube
  bool meet = false;
  for (int c = 0; c < cx.num_cubes() && !meet; ++c) {
    const Cube& cu = cx.cube(c);
    std::set<int> here;
    for (int k = 0; k < cu.dim; ++k) here.insert(ws.wall_of(cx.edge_at(c, 0, k)));
    meet = here.count(wa) && here.count(wb);
  }
  if (!meet) return false;
  // and no square has the two ends as a corner
  for (int c : cx.cubes_at(p.vertex)) {
    if (cx.cube(c).dim != 2) continue;
    for (int q = 0; q < 4; ++q) {
      if (cx.cube(c).verts[q] != p.vertex) continue;
      std::set<EdgeEnd> s{cx.edge_at(c, q, 0), cx.edge_at(c, q, 1)};
      if (s == std::set<EdgeEnd>{p.a, p.b}) return false;
    }
  }
  return true;
}

bool verify_odd_cycle(const CubeComplex& cx, const std::vector<int>& cycle) {
  if (cycle.size() < 2 || cycle.front() != cycle.back() || (cycle.size() - 1) % 2 == 0) return false;
  for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
    bool adj = false;
    for (const auto& e : cx.ends_at(cycle[i])) adj = adj || cx.other_vertex(e) == cycle[i + 1];
    if (!adj) return false;
  }
  return true;
}

bool verify_simple_witness(const CubeComplex& cx, const SimpleResult& r) {
  if (r.simple) return false;
  auto simplex_of = [&](std::pair<int, int> src) {
    std::vector<EdgeEnd> s;
    const Cube& cu = cx.cube(src.first);
    if (cu.verts[src.second] != r.vertex) return std::vector<EdgeEnd>{};
    for (int k = 0; k < cu.dim; ++k) s.push_back(cx.edge_at(src.first, src.second, k));
    std::sort(s.begin(), s.end());
    return s;
  };
  auto a = simplex_of(r.first), b = simplex_of(r.second);
  if (a.empty()) return false;
  if (r.first == r.second) return std::adjacent_find(a.begin(), a.end()) != a.end();
  return a == b;
}

std::string format_report(const CubeComplex& cx, const SpecialnessReport& r) {
  std::ostringstream os;
  auto edge = [&](EdgeEnd e) {
    const auto& vs = cx.cube(e.edge).verts;
    return "e" + std::to_string(e.edge) + "[" + cx.name(vs[0]) + "-" + cx.name(vs[1]) + "]." + std::to_string(e.end);
  };
  auto yn = [](bool b) { return b ? "true" : "false"; };
  os << "cubecx special v1\n";
  os << "simple: " << yn(r.simple) << "\n";
  if (!r.simple) {
    os << "  witness: vertex " << cx.name(r.simple_witness.vertex) << " corners (cube " << r.simple_witness.first.first
       << ", corner " << r.simple_witness.first.second << ") and (cube " << r.simple_witness.second.first
       << ", corner " << r.simple_witness.second.second << ")\n";
  }
  os << "cond1_violations: " << r.cond1_violations.size() << "\n";
  for (const auto& p : r.cond1_violations)
    os << "  vertex " << cx.name(p.vertex) << ": " << edge(p.a) << " " << edge(p.b) << " wall W" << p.wall_a << "\n";
  os << "cond2_violations: " << r.cond2_violations.size() << "\n";
  for (const auto& p : r.cond2_violations)
    os << "  vertex " << cx.name(p.vertex) << ": " << edge(p.a) << " " << edge(p.b) << " walls W" << p.wall_a << " W"
       << p.wall_b << "\n";
  os << "bipartite: " << yn(r.bipartite) << "\n";
  if (!r.bipartite) {
    os << "  odd_cycle:";
    for (int v : r.odd_cycle) os << " " << cx.name(v);
    os << "\n";
  }
  os << "verdict: " << yn(r.verdict) << "\n";
  return os.str();
}

CubeComplex wedge(const std::vector<CubeComplex>& complexes, const std::vector<int>& basepoints) {
  if (complexes.size() != basepoints.size()) throw PreconditionError("wedge needs one basepoint per complex");
  if (complexes.empty()) throw PreconditionError("wedge of nothing");
  for (std::size_t i = 0; i < complexes.size(); ++i)
    if (basepoints[i] < 0 || basepoints[i] >= complexes[i].num_vertices())
      throw PreconditionError("basepoint of complex " + std::to_string(i) + " is not one of its vertices");
  std::vector<std::string> names;
  std::vector<Cube> cubes;
  int joint = -1;
  for (std::size_t i = 0; i < complexes.size(); ++i) {
    const auto& cx = complexes[i];
    std::vector<int> vmap(cx.num_vertices());
    for (int v = 0; v < cx.num_vertices(); ++v) {
      if (v == basepoints[i] && joint >= 0) {
        vmap[v] = joint;
        continue;
      }
      vmap[v] = static_cast<int>(names.size());
      names.push_back(std::to_string(i) + "." + cx.name(v));
      if (v == basepoints[i]) joint = vmap[v];
    }
    const int offset = static_cast<int>(cubes.size());
    for (const Cube& c : cx.cubes()) {
      Cube n = c;
      for (int& v : n.verts) v = vmap[v];
      for (auto& f : n.faces) f.cube = c.dim == 1 ? vmap[f.cube] : f.cube + offset;
      cubes.push_back(n);
    }
  }
  return CubeComplex(std::move(names), std::move(cubes));
}

CellularMap from_vertex_map(const CubeComplex& source, const CubeComplex& target, const std::vector<int>& vertex_map) {
  if (static_cast<int>(vertex_map.size()) != source.num_vertices()) throw PreconditionError("vertex map has wrong size");
  CellularMap f{&source, &target, vertex_map, {}};
  for (int v : vertex_map)
    if (v < 0 || v >= target.num_vertices()) throw PreconditionError("vertex map entry out of range");
  for (const Cube& c : source.cubes()) {
    std::vector<int> img;
    for (int v : c.verts) img.push_back(vertex_map[v]);
    auto found = target.find_cubes(c.dim, img);
    f.cube_map.push_back(found.empty() ? -1 : found[0]);
  }
  return f;
}

bool is_covering(const CellularMap& f) {
  if (!f.source || !f.target) throw PreconditionError("map without source or target");
  const CubeComplex& s = *f.source;
  const CubeComplex& t = *f.target;
  if (static_cast<int>(f.vertex_map.size()) != s.num_vertices() || static_cast<int>(f.cube_map.size()) != s.num_cubes())
    throw PreconditionError("map sizes do not match the source complex");
  for (int v : f.vertex_map)
    if (v < 0 || v >= t.num_vertices()) throw PreconditionError("vertex image out of range");
  std::vector<Sym> sym(s.num_cubes());
  for (int c = 0; c < s.num_cubes(); ++c) {
    int d = f.cube_map[c];
    if (d < 0) return false;
    if (d >= t.num_cubes()) throw PreconditionError("cube image out of range");
    if (t.cube(d).dim != s.cube(c).dim) throw PreconditionError("cube " + std::to_string(c) + " changes dimension");
    std::vector<int> img;
    for (int v : s.cube(c).verts) img.push_back(f.vertex_map[v]);
    auto m = match_face(img, t.cube(d).verts, s.cube(c).dim);
    if (!m) throw PreconditionError("cube " + std::to_string(c) + " is not mapped cellularly");
    sym[c] = *m;
  }
  std::vector<char> hitv(t.num_vertices(), 0), hitc(t.num_cubes(), 0);
  for (int v : f.vertex_map) hitv[v] = 1;
  for (int c : f.cube_map) hitc[c] = 1;
  if (std::count(hitv.begin(), hitv.end(), 0) || std::count(hitc.begin(), hitc.end(), 0)) return false;
  auto map_end = [&](EdgeEnd e) { return EdgeEnd{f.cube_map[e.edge], sym[e.edge].apply(e.end)}; };
  for (int v = 0; v < s.num_vertices(); ++v) {
    int w = f.vertex_map[v];
    std::vector<EdgeEnd> img;
    for (const auto& e : s.ends_at(v)) img.push_back(map_end(e));
    std::sort(img.begin(), img.end());
    auto tgt = t.ends_at(w);
    std::sort(tgt.begin(), tgt.end());
    if (img != tgt) return false;
    std::vector<std::vector<EdgeEnd>> ls, lt;
    for (int c : s.cubes_at(v)) {
      const Cube& cu = s.cube(c);
      for (int q = 0; q < (1 << cu.dim); ++q) {
        if (cu.verts[q] != v) continue;
        std::vector<EdgeEnd> simp;
        for (int k = 0; k < cu.dim; ++k) simp.push_back(map_end(s.edge_at(c, q, k)));
        std::sort(simp.begin(), simp.end());
        ls.push_back(simp);
      }
    }
    for (int c : t.cubes_at(w)) {
      const Cube& cu = t.cube(c);
      for (int q = 0; q < (1 << cu.dim); ++q) {
        if (cu.verts[q] != w) continue;
        std::vector<EdgeEnd> simp;
        for (int k = 0; k < cu.dim; ++k) simp.push_back(t.edge_at(c, q, k));
        std::sort(simp.begin(), simp.end());
        lt.push_back(simp);
      }
    }
    std::sort(ls.begin(), ls.end());
    std::sort(lt.begin(), lt.end());
    if (ls != lt) return false;
  }
  return true;
}

}  // namespace cubecx
