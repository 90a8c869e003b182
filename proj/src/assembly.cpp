#include "cubecx/assembly.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "cubecx/covers.hpp"

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

std::string wall_name(int w) { return "W" + std::to_string(w); }

std::string coloring_str(const Coloring& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return "(" + s + ")";
}

std::string pattern_str(const ColoringClass& k) {
  std::string s;
  for (auto [w, col] : k.pattern) s += (s.empty() ? "" : " ") + wall_name(w) + ":" + std::to_string(col);
  return "{" + s + "}";
}

// Edges with exactly one endpoint in Z, as (edge, inner endpoint).
std::vector<std::pair<int, int>> crossing_edges(const Ambient& a, const Piece& p) {
  std::vector<std::pair<int, int>> out;
  for (int e : a.cx->edges()) {
    const auto& vs = a.cx->cube(e).verts;
    bool i0 = p.contains(vs[0]), i1 = p.contains(vs[1]);
    if (i0 != i1) out.push_back({e, i0 ? vs[0] : vs[1]});
  }
  return out;
}

std::set<EdgeClass> translate(const Ambient& a, int g, const std::set<EdgeClass>& s) {
  std::set<EdgeClass> out;
  for (const auto& ec : s) out.insert(act_edge_class(a, g, ec));
  return out;
}

std::vector<int> translate_cells(const Ambient& a, int g, const std::vector<int>& cells) {
  std::vector<int> out;
  for (int c : cells) out.push_back(a.group->cube(g, c));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool Piece::contains(int v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
bool Piece::has_cell(int c) const { return std::binary_search(cells.begin(), cells.end(), c); }

std::vector<int> vertices_satisfying(const Ambient& a, const std::map<int, int>& constraints) {
  std::vector<int> out;
  for (int v = 0; v < a.cx->num_vertices(); ++v) {
    bool ok = true;
    for (auto [w, s] : constraints) ok = ok && a.hs.side(w, v) == s;
    if (ok) out.push_back(v);
  }
  return out;
}

std::vector<int> cells_satisfying(const Ambient& a, const std::map<int, int>& constraints) {
  std::vector<int> out;
  for (int c = 0; c < a.cx->num_cubes(); ++c) {
    const auto& vs = a.cx->cube(c).verts;
    bool ok = true;
    for (auto [w, s] : constraints) {
      bool any = false;
      for (int v : vs) any = any || a.hs.side(w, v) == s;
      ok = ok && any;
    }
    if (ok) out.push_back(c);
  }
  return out;
}

const Coloring& edge_coloring(const Ambient& a, const Piece& p, int edge) {
  const auto& vs = a.cx->cube(edge).verts;
  int x = -1;
  for (int v : {std::min(vs[0], vs[1]), std::max(vs[0], vs[1])})
    if (x < 0 && p.contains(v)) x = v;
  if (x < 0) throw PreconditionError("edge " + std::to_string(edge) + " does not meet the piece");
  return p.colorings.at(x);
}

CubeComplex realize(const Ambient& a, const Piece& p) {
  std::vector<int> index(a.cx->num_vertices(), -1);
  std::vector<std::string> names;
  for (int v : p.vertices) {
    index[v] = static_cast<int>(names.size());
    names.push_back(a.cx->name(v));
  }
  std::vector<Cube> cubes;
  for (int c : p.cells) {
    const Cube& cu = a.cx->cube(c);
    if (!std::all_of(cu.verts.begin(), cu.verts.end(), [&](int v) { return index[v] >= 0; })) continue;
    Cube n{cu.dim, {}, {}};
    for (int v : cu.verts) n.verts.push_back(index[v]);
    cubes.push_back(n);
  }
  return CubeComplex(std::move(names), std::move(cubes));
}

InitialPieces initial_pieces(const Ambient& a, const HierarchyOptions& opt) {
  InitialPieces ip;
  const WallGraph& gamma = a.gamma;
  ip.k = gamma.max_degree();
  ip.base_coloring = greedy_coloring(gamma);
  if (!is_proper(gamma, ip.base_coloring) || num_colors(ip.base_coloring) > ip.k + 1)
    throw IntegrityError("greedy colouring is not a proper (k+1)-colouring");
  if (opt.measure == MeasureKind::kOrbit) {
    ip.measure = orbit_measure(a.wall_perms, ip.base_coloring);
  } else {
    ip.measure = exact_invariant_measure(gamma, a.wall_perms, opt.coloring_cap);
  }
  for (const auto& [c, m] : ip.measure.mass) ip.space.push_back(c);

  std::vector<Template> templates;
  for (int x : a.group->vertex_orbit_reps()) {
    AnchorClasses an;
    an.vertex = x;
    an.stabilizer = static_cast<int>(a.group->stabilizer_of_vertex(x).size());
    std::map<ColoringClass, Coloring> first;
    for (const auto& c : ip.space) first.emplace(class_of_vertex(*a.cx, a.ws, gamma, c, x), c);
    for (const auto& [k, c] : first) {
      an.classes.push_back(k);
      templates.push_back(Template{x, c, k});
    }
    ip.anchors.push_back(an);
  }
  ip.alpha = seed_alpha(ip.measure, ip.anchors);
  ip.system = build_system(a, templates, ip.space);
  ip.kernel = nonneg_integer_kernel(ip.system.matrix(), ip.alpha);

  for (std::size_t i = 0; i < templates.size(); ++i) {
    if (ip.kernel.w[i] == 0) continue;
    if (ip.kernel.w[i] > Int(1000000000)) throw PreconditionError("multiplicity too large to expand");
    const auto& t = templates[i];
    Piece p;
    for (const auto& e : a.cx->ends_at(t.anchor)) {
      int w = a.ws.wall_of(e);
      p.constraints[w] = a.hs.side(w, t.anchor);
    }
    p.vertices = vertices_satisfying(a, p.constraints);
    p.cells = cells_satisfying(a, p.constraints);
    p.colorings[t.anchor] = t.coloring;
    p.multiplicity = ip.kernel.w[i].convert_to<long long>();
    ip.pieces.push_back(std::move(p));
  }
  return ip;
}

BoundaryWalls boundary_walls(const Ambient& a, const Piece& p, int j) {
  BoundaryWalls b;
  std::set<int> all, colj;
  for (auto [e, x] : crossing_edges(a, p)) {
    int w = a.wall_of(e);
    int col = p.colorings.at(x).at(w);
    all.insert(w);
    if (col == j) colj.insert(w);
  }
  b.all.assign(all.begin(), all.end());
  b.colored_j.assign(colj.begin(), colj.end());
  return b;
}

ColoringClass zipping_check(const Ambient& a, const Piece& p, int wall) {
  std::optional<ColoringClass> common;
  int first = -1;
  for (auto [e, x] : crossing_edges(a, p)) {
    if (a.wall_of(e) != wall) continue;
    auto k = class_of_wall(a.gamma, p.colorings.at(x), wall);
    if (!common) {
      common = k;
      first = e;
    } else if (*common != k) {
      throw IntegrityError("zipping fails on " + wall_name(wall) + ": edges " + std::to_string(first) + " and " +
                           std::to_string(e) + " carry different classes");
    }
  }
  if (!common) throw PreconditionError(wall_name(wall) + " is not a boundary wall of the piece");
  return *common;
}

SplitComponent split_wall_along_coloring(const Ambient& a, int wall, const Coloring& c, int j, int edge) {
  const CubeComplex& cx = *a.cx;
  if (!cx.is_edge(edge) || a.wall_of(edge) != wall)
    throw PreconditionError("edge " + std::to_string(edge) + " is not dual to " + wall_name(wall));
  std::map<int, std::vector<int>> adj;
  if (cx.dimension() >= 2) {
    for (int s : cx.cubes_by_dim()[2]) {
      for (int k = 0; k < 2; ++k) {
        if (a.wall_of(cx.edge_at(s, 0, k).edge) != wall) continue;
        int other = a.wall_of(cx.edge_at(s, 0, 1 - k).edge);
        if (other == wall || c.at(other) <= j) continue;
        int e1 = cx.edge_at(s, 0, k).edge, e2 = cx.edge_at(s, 1 << (1 - k), k).edge;
        adj[e1].push_back(e2);
        adj[e2].push_back(e1);
      }
    }
  }
  std::set<int> seen{edge};
  std::deque<int> dq{edge};
  while (!dq.empty()) {
    int e = dq.front();
    dq.pop_front();
    for (int f : adj[e])
      if (seen.insert(f).second) dq.push_back(f);
  }
  SplitComponent out;
  out.wall = wall;
  out.dual_edges.assign(seen.begin(), seen.end());
  for (int cb = 0; cb < cx.num_cubes(); ++cb) {
    const Cube& cu = cx.cube(cb);
    bool hit = false;
    for (int k = 0; k < cu.dim && !hit; ++k) {
      if (a.wall_of(cx.edge_at(cb, 0, k).edge) != wall) continue;
      for (int q = 0; q < (1 << cu.dim) && !hit; ++q)
        if (!(q >> k & 1)) hit = seen.count(cx.edge_at(cb, q, k).edge) > 0;
    }
    if (hit) out.cells.push_back(cb);
  }
  return out;
}

std::vector<int> expand_instances(const std::vector<Piece>& pieces, std::size_t cap) {
  std::vector<int> out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].multiplicity < 0) throw IntegrityError("negative multiplicity");
    for (long long m = 0; m < pieces[i].multiplicity; ++m) {
      if (out.size() >= cap) throw PreconditionError("more than " + std::to_string(cap) + " piece instances");
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

std::vector<Portal> find_portals(const Ambient& a, const std::vector<Piece>& pieces, const std::vector<int>& instances,
                                 int j) {
  std::vector<Portal> out;
  std::map<int, std::vector<Portal>> per_piece;
  for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
    const Piece& p = pieces[pi];
    auto bw = boundary_walls(a, p, j);
    auto cross = crossing_edges(a, p);
    for (int w : bw.colored_j) {
      Portal pt;
      pt.piece = static_cast<int>(pi);
      pt.wall = w;
      for (auto [e, x] : cross) {
        if (a.wall_of(e) != w) continue;
        pt.dual_edges.push_back(e);
        pt.side = a.hs.side(w, x);
        pt.signature.insert(edge_class(a, e, p.colorings.at(x)));
      }
      for (int c : p.cells) {
        const auto& here = a.ws.walls_of_cube(c);
        if (std::binary_search(here.begin(), here.end(), w)) pt.cells.push_back(c);
      }
      per_piece[pt.piece].push_back(pt);
    }
  }
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (Portal pt : per_piece[instances[i]]) {
      pt.id = static_cast<int>(out.size());
      pt.instance = static_cast<int>(i);
      out.push_back(std::move(pt));
    }
  }
  return out;
}

bool portal_cover_check(const Ambient& a, const Piece& p, const Portal& portal, int j) {
  for (int e : portal.dual_edges) {
    auto comp = split_wall_along_coloring(a, portal.wall, edge_coloring(a, p, e), j, e);
    if (comp.dual_edges != portal.dual_edges || comp.cells != portal.cells) return false;
  }
  return true;
}

std::vector<int> teleports(const Ambient& a, const Portal& p, const Portal& q) {
  std::vector<int> out;
  for (int g = 0; g < a.group->size(); ++g)
    if (translate(a, g, q.signature) == p.signature) out.push_back(g);
  return out;
}

Compatibility compatibility_classes(const Ambient& a, const std::vector<Portal>& portals) {
  Compatibility comp;
  const int n = static_cast<int>(portals.size());
  const GroupAction& G = *a.group;
  // portals with equal signatures are trivially compatible; compare one per signature
  std::map<std::set<EdgeClass>, std::vector<int>> by_sig;
  for (const auto& p : portals) by_sig[p.signature].push_back(p.id);
  std::vector<int> sig_rep;
  for (const auto& [s, ids] : by_sig) sig_rep.push_back(ids[0]);
  UnionFind uf(n);
  for (const auto& [s, ids] : by_sig)
    for (int id : ids) uf.unite(ids[0], id);
  for (std::size_t x = 0; x < sig_rep.size(); ++x)
    for (std::size_t y = x + 1; y < sig_rep.size(); ++y)
      if (!teleports(a, portals[sig_rep[x]], portals[sig_rep[y]]).empty()) uf.unite(sig_rep[x], sig_rep[y]);

  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);
  for (auto& [root, members] : groups) {
    CompatClass cc;
    cc.rep = members[0];
    cc.members = members;
    const Portal& p0 = portals[cc.rep];
    for (int m : members) {
      const Portal& pm = portals[m];
      auto t = teleports(a, p0, pm);
      if (t.empty()) {
        ++comp.groupoid_violations;
        continue;
      }
      // side of g.Z relative to the representative's wall, for every teleport g
      const auto& vs = a.cx->cube(pm.dual_edges[0]).verts;
      const int inner = a.hs.side(pm.wall, vs[0]) == pm.side ? vs[0] : vs[1];
      int side = 0;
      for (int g : t) {
        int s = a.hs.side(p0.wall, G.vertex(g, inner));
        if (side == 0) side = s;
        if (side != s) throw IntegrityError("side of portal " + std::to_string(m) + " depends on the teleport");
      }
      (side > 0 ? cc.plus : cc.minus).push_back(m);
      // groupoid laws against the representative
      for (int g : t) {
        if (translate_cells(a, g, pm.cells) != p0.cells) ++comp.groupoid_violations;
        auto back = teleports(a, pm, p0);
        if (!std::binary_search(back.begin(), back.end(), G.inverse(g))) ++comp.groupoid_violations;
      }
    }
    // identity and composition: T(P0,P) T(P,Q) inside T(P0,Q)
    for (int m : members) {
      auto self = teleports(a, portals[m], portals[m]);
      if (self.empty() || self[0] != 0) ++comp.groupoid_violations;
    }
    if (members.size() <= 16) {
      for (int x : members)
        for (int y : members) {
          auto t0x = teleports(a, p0, portals[x]);
          auto txy = teleports(a, portals[x], portals[y]);
          auto t0y = teleports(a, p0, portals[y]);
          for (int g : t0x)
            for (int h : txy)
              if (!std::binary_search(t0y.begin(), t0y.end(), G.compose(g, h))) ++comp.groupoid_violations;
        }
    }
    comp.classes.push_back(std::move(cc));
  }
  return comp;
}

std::vector<Match> match_portals(const Ambient& a, const std::vector<Portal>& portals, const Compatibility& comp) {
  std::vector<Match> out;
  for (const auto& cc : comp.classes) {
    if (cc.plus.size() != cc.minus.size())
      throw IntegrityError("compatibility class of portal " + std::to_string(cc.rep) + " has " +
                           std::to_string(cc.plus.size()) + " plus and " + std::to_string(cc.minus.size()) +
                           " minus portals");
    for (std::size_t i = 0; i < cc.plus.size(); ++i) {
      auto t = teleports(a, portals[cc.plus[i]], portals[cc.minus[i]]);
      if (t.empty()) throw IntegrityError("matched portals have no teleport");
      out.push_back(Match{cc.plus[i], cc.minus[i], t[0]});
    }
  }
  return out;
}

std::vector<Piece> glue(const Ambient& a, const std::vector<Piece>& pieces, const std::vector<int>& instances,
                        const std::vector<Portal>& portals, const std::vector<Match>& matching, int j) {
  const GroupAction& G = *a.group;
  const int n = static_cast<int>(instances.size());
  struct Link {
    int self_portal, other_portal, t, match;
  };
  std::vector<std::vector<Link>> links(n);
  for (std::size_t m = 0; m < matching.size(); ++m) {
    const Match& mt = matching[m];
    links[portals[mt.plus].instance].push_back({mt.plus, mt.minus, mt.g, static_cast<int>(m)});
    links[portals[mt.minus].instance].push_back({mt.minus, mt.plus, G.inverse(mt.g), static_cast<int>(m)});
  }
  std::vector<int> placed_g(n, -1);
  std::map<std::pair<std::map<int, int>, std::map<int, Coloring>>, Piece> merged;
  for (int root = 0; root < n; ++root) {
    if (placed_g[root] >= 0) continue;
    std::set<int> verts, cells;
    std::vector<int> members;
    std::set<int> used_matches;
    auto place = [&](int inst, int g) {
      placed_g[inst] = g;
      members.push_back(inst);
      for (int v : pieces[instances[inst]].vertices) verts.insert(G.vertex(g, v));
      for (int c : pieces[instances[inst]].cells) cells.insert(G.cube(g, c));
    };
    place(root, 0);
    std::deque<int> dq{root};
    while (!dq.empty()) {
      int A = dq.front();
      dq.pop_front();
      for (const Link& l : links[A]) {
        if (!used_matches.insert(l.match).second) continue;
        int B = portals[l.other_portal].instance;
        if (placed_g[B] >= 0) throw IntegrityError("graph of spaces has a cycle through instance " + std::to_string(B));
        int gB = G.compose(placed_g[A], l.t);
        const Piece& pb = pieces[instances[B]];
        for (int v : pb.vertices)
          if (verts.count(G.vertex(gB, v)))
            throw IntegrityError("translates overlap at vertex " + a.cx->name(G.vertex(gB, v)));
        auto expect = translate_cells(a, placed_g[A], portals[l.self_portal].cells);
        if (translate_cells(a, gB, portals[l.other_portal].cells) != expect)
          throw IntegrityError("matched portals do not line up");
        std::vector<int> shared;
        for (int c : translate_cells(a, gB, pb.cells))
          if (cells.count(c)) shared.push_back(c);
        if (shared != expect) throw IntegrityError("translates meet outside their common portal");
        place(B, gB);
        dq.push_back(B);
      }
    }
    Piece np;
    std::map<int, Coloring> cols;
    for (int inst : members) {
      const Piece& p = pieces[instances[inst]];
      int g = placed_g[inst];
      for (auto [e, x] : crossing_edges(a, p)) {
        int w = a.wall_of(e);
        if (p.colorings.at(x).at(w) >= j) continue;
        int gw = a.wall_perms[g][w];
        int s = a.hs.side(gw, G.vertex(g, x));
        auto [it, fresh] = np.constraints.emplace(gw, s);
        if (!fresh && it->second != s)
          throw IntegrityError("glued pieces ask for both sides of " + wall_name(gw));
      }
      for (const auto& [x, c] : p.colorings) {
        int gx = G.vertex(g, x);
        Coloring gc = act(a.wall_perms[g], c);
        auto [it, fresh] = np.colorings.emplace(gx, gc);
        if (!fresh && it->second != gc) throw IntegrityError("two colourings at vertex " + a.cx->name(gx));
      }
    }
    np.vertices.assign(verts.begin(), verts.end());
    np.cells.assign(cells.begin(), cells.end());
    if (vertices_satisfying(a, np.constraints) != np.vertices || cells_satisfying(a, np.constraints) != np.cells)
      throw IntegrityError("glued space is not the intersection of its half-spaces");
    auto key = std::make_pair(np.constraints, np.colorings);
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(key, np);
    } else {
      it->second.multiplicity += 1;
    }
  }
  std::vector<Piece> out;
  for (auto& [k, p] : merged) out.push_back(std::move(p));
  std::sort(out.begin(), out.end(), [](const Piece& x, const Piece& y) {
    return std::tie(x.vertices, x.constraints, x.colorings) < std::tie(y.vertices, y.constraints, y.colorings);
  });
  return out;
}

GluingCounts gluing_counts(const Ambient& a, const std::vector<Piece>& pieces) {
  GluingCounts counts;
  const GroupAction& G = *a.group;
  for (const Piece& p : pieces) {
    for (int e : a.cx->edges()) {
      const auto& vs = a.cx->cube(e).verts;
      if (!p.contains(vs[0]) && !p.contains(vs[1])) continue;
      EdgeClass ec = edge_class(a, e, edge_coloring(a, p, e));
      std::set<std::pair<EdgeClass, int>> hits;
      for (int g = 0; g < G.size(); ++g) {
        EdgeClass key = act_edge_class(a, g, ec);
        int w = a.wall_of(key.edge);
        bool plus = false, minus = false;
        for (int v : p.vertices) {
          int s = a.hs.side(w, G.vertex(g, v));
          plus = plus || s > 0;
          minus = minus || s < 0;
        }
        if (plus) hits.insert({key, 1});
        if (minus) hits.insert({key, -1});
      }
      for (const auto& [key, s] : hits) (s > 0 ? counts[key].first : counts[key].second) += p.multiplicity;
    }
  }
  return counts;
}

int LevelChecks::total() const {
  return property1 + property2 + zipping + disjointness + gluing_equations + half_space + portal_cover + groupoid +
         stabiliser_reports + (counts_preserved ? 0 : 1);
}

LevelChecks check_level(const Ambient& a, const std::vector<Piece>& pieces, int j, GluingCounts* counts_out) {
  LevelChecks ch;
  const CubeComplex& cx = *a.cx;
  for (const Piece& p : pieces) {
    for (int e : cx.edges()) {
      const auto& vs = cx.cube(e).verts;
      if (p.contains(vs[0]) && p.contains(vs[1])) {
        int w = a.wall_of(e);
        if (class_of_wall(a.gamma, p.colorings.at(vs[0]), w) != class_of_wall(a.gamma, p.colorings.at(vs[1]), w))
          ++ch.property1;
      }
    }
    for (int x : p.vertices) {
      const Coloring& cxl = p.colorings.at(x);
      for (const auto& end : cx.ends_at(x)) {
        bool inside = p.contains(cx.other_vertex(end));
        if (inside != (cxl.at(a.ws.wall_of(end)) > j)) ++ch.property2;
      }
    }
    if (ch.property2 > 0) continue;  // boundary data below assumes property (2)
    auto bw = boundary_walls(a, p, j);
    for (int w : bw.all) {
      try {
        zipping_check(a, p, w);
      } catch (const IntegrityError&) {
        ++ch.zipping;
      }
    }
    for (std::size_t x = 0; x < bw.colored_j.size(); ++x)
      for (std::size_t y = x + 1; y < bw.colored_j.size(); ++y)
        if (a.ws.intersect(bw.colored_j[x], bw.colored_j[y])) ++ch.disjointness;
    for (int x : p.vertices) {
      std::set<int> jw;
      for (const auto& end : cx.ends_at(x)) {
        int w = a.ws.wall_of(end);
        if (!p.contains(cx.other_vertex(end)) && std::binary_search(bw.colored_j.begin(), bw.colored_j.end(), w))
          jw.insert(w);
      }
      if (jw.size() > 1) ++ch.disjointness;
    }
    if (vertices_satisfying(a, p.constraints) != p.vertices || cells_satisfying(a, p.constraints) != p.cells)
      ++ch.half_space;
    // H is trivial, so no nontrivial element can stabilise two portals.
  }
  GluingCounts counts = gluing_counts(a, pieces);
  for (const auto& [k, pm] : counts)
    if (pm.first != pm.second) ++ch.gluing_equations;
  if (counts_out) *counts_out = std::move(counts);
  return ch;
}

int stabiliser_identity_violations(const Ambient& a, const InitialPieces& init, const GluingCounts& counts) {
  int bad = 0;
  std::set<EdgeClass> keys;
  for (int f : a.cx->edges())
    for (const auto& c : init.space) keys.insert(edge_class(a, f, c));
  for (const auto& k : keys) {
    Int stab = stabilizer_order(a, k);
    auto it = counts.find(k);
    long long vp = it == counts.end() ? 0 : it->second.first, vm = it == counts.end() ? 0 : it->second.second;
    for (int side : {1, -1}) {
      auto coeff = count_m(a, init.system.templates, k, side);
      Int m = 0;
      for (std::size_t i = 0; i < coeff.size(); ++i) m += coeff[i] * init.kernel.w[i];
      if (m != stab * Int(side > 0 ? vp : vm)) ++bad;
    }
  }
  return bad;
}

HierarchyTrace run_hierarchy(const CubeComplex& cx, const GroupAction& g, const HierarchyOptions& opt) {
  if (cx.num_vertices() == 0) throw PreconditionError("empty complex");
  if (!cx.connected()) throw PreconditionError("complex is not connected");
  if (!is_npc(cx).npc) throw PreconditionError("complex is not nonpositively curved");
  if (!certify_simply_connected(cx)) throw PreconditionError("complex is not simply connected");
  HierarchyTrace t;
  t.radius = opt.radius < 0 ? cx.diameter() : opt.radius;
  t.ambient = Ambient::make(cx, g, t.radius);
  const Ambient& a = t.ambient;
  if (!a.labels.equivariant)
    throw PreconditionError("the group exchanges the sides of some wall; subdivide the complex first");
  try {
    t.init = initial_pieces(a, opt);
    std::vector<Piece> pieces = t.init.pieces;
    for (int j = t.init.k + 1; j >= 0; --j) {
      Level l;
      l.j = j;
      l.pieces = pieces;
      l.checks = check_level(a, pieces, j, &l.counts);
      if (!t.levels.empty()) l.checks.counts_preserved = l.counts == t.levels.back().counts;
      if (j == t.init.k + 1) t.stab_identity_violations = stabiliser_identity_violations(a, t.init, l.counts);
      if (j > 0 && l.checks.total() == 0) {
        auto instances = expand_instances(pieces, opt.instance_cap);
        l.portals = find_portals(a, pieces, instances, j);
        for (const auto& pt : l.portals)
          if (!portal_cover_check(a, pieces[pt.piece], pt, j)) ++l.checks.portal_cover;
        l.compat = compatibility_classes(a, l.portals);
        l.checks.groupoid = l.compat.groupoid_violations;
        if (l.checks.total() == 0) {
          l.matching = match_portals(a, l.portals, l.compat);
          pieces = glue(a, pieces, instances, l.portals, l.matching, j);
        }
      }
      int bad = l.checks.total();
      t.levels.push_back(std::move(l));
      if (bad > 0) {
        t.error = "level " + std::to_string(j) + ": " + std::to_string(bad) + " check violations";
        return t;
      }
    }
  } catch (const Error& e) {
    t.error = e.what();
    return t;
  }
  if (t.stab_identity_violations > 0) {
    t.error = "stabiliser counting identity fails";
    return t;
  }
  const auto& last = t.levels.back().pieces;
  bool iso = !last.empty();
  for (const auto& p : last)
    iso = iso && p.constraints.empty() && static_cast<int>(p.vertices.size()) == cx.num_vertices() &&
          isomorphic(realize(a, p), cx);
  t.v0_isomorphic = iso;
  t.ok = iso;
  if (!iso) t.error = "V_0 is not a copy of X";
  return t;
}

std::string format_level(const Ambient& a, const Level& l) {
  std::ostringstream os;
  const CubeComplex& cx = *a.cx;
  long long inst = 0;
  for (const auto& p : l.pieces) inst += p.multiplicity;
  os << "level " << l.j << "\n";
  os << "  pieces: " << l.pieces.size() << " (instances " << inst << ")\n";
  for (std::size_t i = 0; i < l.pieces.size(); ++i) {
    const Piece& p = l.pieces[i];
    os << "  piece " << i << " x" << p.multiplicity << "\n    vertices:";
    for (int v : p.vertices) os << " " << cx.name(v);
    os << "\n    constraints:";
    for (auto [w, s] : p.constraints) os << " " << wall_name(w) << (s > 0 ? "+" : "-");
    os << "\n    cells: " << p.cells.size() << "\n    colourings:";
    for (const auto& [x, c] : p.colorings) os << " " << cx.name(x) << "=" << coloring_str(c);
    os << "\n";
  }
  long long balanced = 0;
  for (const auto& [k, pm] : l.counts) balanced += pm.first == pm.second;
  os << "  gluing_equations: " << l.counts.size() << " (balanced " << balanced << ")\n";
  for (const auto& [k, pm] : l.counts) {
    const auto& vs = cx.cube(k.edge).verts;
    os << "    e" << k.edge << "[" << cx.name(vs[0]) << "-" << cx.name(vs[1]) << "] " << pattern_str(k.cls) << " : "
       << pm.first << " = " << pm.second << "\n";
  }
  const auto& c = l.checks;
  os << "  checks: property1=" << c.property1 << " property2=" << c.property2 << " zipping=" << c.zipping
     << " disjointness=" << c.disjointness << " gluing=" << c.gluing_equations << " half_space=" << c.half_space
     << " portal_cover=" << c.portal_cover << " groupoid=" << c.groupoid << " stabiliser_reports=" << c.stabiliser_reports
     << " counts_preserved=" << (c.counts_preserved ? "true" : "false") << "\n";
  if (l.j > 0) {
    os << "  portals: " << l.portals.size() << "\n";
    for (const auto& pt : l.portals) {
      os << "    P" << pt.id << " instance " << pt.instance << " piece " << pt.piece << " " << wall_name(pt.wall)
         << (pt.side > 0 ? "+" : "-") << " edges";
      for (int e : pt.dual_edges) os << " e" << e;
      os << "\n";
    }
    os << "  classes: " << l.compat.classes.size() << "\n";
    for (const auto& cc : l.compat.classes) {
      os << "    rep P" << cc.rep << " plus";
      for (int p : cc.plus) os << " P" << p;
      os << " minus";
      for (int p : cc.minus) os << " P" << p;
      os << "\n";
    }
    os << "  matching: " << l.matching.size() << "\n";
    for (const auto& m : l.matching) os << "    P" << m.plus << " <-> P" << m.minus << " g" << m.g << "\n";
  }
  return os.str();
}

std::string format_trace(const HierarchyTrace& t) {
  const Ambient& a = t.ambient;
  std::ostringstream os;
  os << "cubecx hierarchy v1\n";
  os << "note: quotient = X, K trivial, hat(H) = H, H trivial\n";
  os << "radius: " << t.radius << "\n";
  os << "walls: " << a.ws.size() << "\n";
  os << "group_order: " << a.group->size() << "\n";
  os << "k: " << t.init.k << "\n";
  os << "base_colouring: " << coloring_str(t.init.base_coloring) << "\n";
  os << "space: " << t.init.space.size() << "\n";
  os << "templates: " << t.init.system.templates.size() << "\n";
  for (std::size_t i = 0; i < t.init.system.templates.size(); ++i) {
    const auto& tp = t.init.system.templates[i];
    os << "  t" << i << " " << a.cx->name(tp.anchor) << " " << pattern_str(tp.cls);
    if (i < t.init.alpha.size()) os << " alpha " << to_string(t.init.alpha[i]);
    if (i < t.init.kernel.w.size()) os << " w " << to_string(t.init.kernel.w[i]);
    os << "\n";
  }
  os << "equations: " << t.init.system.rows.size() << "\n";
  os << "kernel: strategy " << t.init.kernel.strategy << " support " << t.init.kernel.support << " dim "
     << t.init.kernel.kernel_dim << "\n";
  os << "stabiliser_identity_violations: " << t.stab_identity_violations << "\n";
  for (const auto& l : t.levels) os << format_level(a, l);
  if (!t.levels.empty() && t.levels.back().j == 0)
    os << "V0: " << t.levels.back().pieces.size() << " piece(s), isomorphic to X: " << (t.v0_isomorphic ? "true" : "false")
       << "\n";
  os << "result: " << (t.ok ? "ok" : "failed: " + t.error) << "\n";
  return os.str();
}

}  // namespace cubecx
