#include "cubecx/covers.hpp"

#include <algorithm>
#include <map>
#include <numeric>

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

DevelopedBall develop(const CubeComplex& cx, int base, int radius) {
  if (base < 0 || base >= cx.num_vertices()) throw PreconditionError("basepoint is not a vertex");
  if (radius < 0) throw PreconditionError("radius must be non-negative");
  auto npc = is_npc(cx);
  if (!npc.npc)
    throw PreconditionError("development needs a nonpositively curved complex; link of " + cx.name(npc.vertex) +
                            " is not flag");

  std::vector<int> proj{base}, layer{0};
  std::vector<std::map<EdgeEnd, int>> step(1);
  std::vector<std::vector<int>> layers{{0}};

  for (int d = 1; d <= radius; ++d) {
    // candidate forward steps out of the previous layer
    std::map<std::pair<int, EdgeEnd>, int> cand_id;
    std::vector<std::pair<int, EdgeEnd>> cands;
    for (int v : layers[d - 1])
      for (const auto& e : cx.ends_at(proj[v]))
        if (!step[v].count(e)) {
          cand_id[{v, e}] = static_cast<int>(cands.size());
          cands.push_back({v, e});
        }
    UnionFind uf(static_cast<int>(cands.size()));
    if (d >= 2) {
      for (int t : layers[d - 2]) {
        for (int s : cx.cubes_at(proj[t])) {
          const Cube& sq = cx.cube(s);
          if (sq.dim != 2) continue;
          for (int q = 0; q < 4; ++q) {
            if (sq.verts[q] != proj[t]) continue;
            EdgeEnd a1 = cx.edge_at(s, q, 0), a2 = cx.edge_at(s, q, 1);
            auto i1 = step[t].find(a1), i2 = step[t].find(a2);
            if (i1 == step[t].end() || i2 == step[t].end()) continue;
            int v1 = i1->second, v2 = i2->second;
            if (layer[v1] != d - 1 || layer[v2] != d - 1) continue;
            auto c1 = cand_id.find({v1, cx.edge_at(s, q ^ 1, 1)});
            auto c2 = cand_id.find({v2, cx.edge_at(s, q ^ 2, 0)});
            if (c1 == cand_id.end() || c2 == cand_id.end())
              throw IntegrityError("development: square closes onto an existing vertex");
            uf.unite(c1->second, c2->second);
          }
        }
      }
    }
    std::map<int, int> root_vertex;
    layers.emplace_back();
    for (int i = 0; i < static_cast<int>(cands.size()); ++i) {
      int r = uf.find(i);
      auto [v, e] = cands[i];
      int target = cx.other_vertex(e);
      auto it = root_vertex.find(r);
      if (it == root_vertex.end()) {
        int w = static_cast<int>(proj.size());
        proj.push_back(target);
        layer.push_back(d);
        step.emplace_back();
        layers.back().push_back(w);
        it = root_vertex.emplace(r, w).first;
      } else if (proj[it->second] != target) {
        throw IntegrityError("development: identified steps project to different vertices");
      }
      step[v][e] = it->second;
      step[it->second][CubeComplex::reverse(e)] = v;
    }
  }

  DevelopedBall out;
  out.base = base;
  out.radius = radius;
  out.vertex_map = proj;
  out.layer = layer;
  std::vector<int> lift_count(cx.num_vertices(), 0);
  std::vector<std::string> names;
  for (int p : proj) names.push_back(cx.name(p) + "#" + std::to_string(lift_count[p]++));

  // Lift every cube from every lifted corner; key = (cube, lifted corners).
  std::map<std::pair<int, std::vector<int>>, int> lifted;
  std::vector<Cube> cubes;
  for (int c = 0; c < cx.num_cubes(); ++c) {
    const Cube& cu = cx.cube(c);
    const int n = 1 << cu.dim;
    for (int v = 0; v < static_cast<int>(proj.size()); ++v) {
      for (int q = 0; q < n; ++q) {
        if (cu.verts[q] != proj[v]) continue;
        // walk from corner q to every corner, in two different bit orders
        std::vector<int> lift(n, -1);
        bool ok = true;
        for (int r = 0; r < n && ok; ++r) {
          int diff = r ^ q;
          for (int order = 0; order < 2 && ok; ++order) {
            int cur = q, at = v;
            for (int j = 0; j < cu.dim && ok; ++j) {
              int k = order == 0 ? j : cu.dim - 1 - j;
              if (!(diff >> k & 1)) continue;
              auto it = step[at].find(cx.edge_at(c, cur, k));
              if (it == step[at].end()) {
                ok = false;
                break;
              }
              at = it->second;
              cur ^= 1 << k;
            }
            if (!ok) break;
            if (lift[r] >= 0 && lift[r] != at) throw IntegrityError("development: cube lifts inconsistently");
            lift[r] = at;
          }
        }
        if (!ok) continue;
        if (lifted.emplace(std::make_pair(c, lift), static_cast<int>(cubes.size())).second) {
          cubes.push_back(Cube{cu.dim, lift, {}});
          out.cube_map.push_back(c);
        }
      }
    }
  }
  out.ball = CubeComplex(std::move(names), std::move(cubes));
  return out;
}

bool certify_simply_connected(const CubeComplex& cx) {
  if (cx.num_vertices() == 0) throw PreconditionError("empty complex");
  if (!cx.connected()) throw PreconditionError("complex is not connected");
  auto b = develop(cx, 0, cx.diameter() + 1);
  return b.ball.num_vertices() == cx.num_vertices() && b.ball.num_cubes() == cx.num_cubes();
}

DoubleCover double_cover_bipartite(const CubeComplex& cx) {
  DoubleCover out;
  std::vector<std::string> names;
  for (int v = 0; v < cx.num_vertices(); ++v) {
    for (int s = 0; s < 2; ++s) {
      names.push_back(cx.name(v) + "/" + std::to_string(s));
      out.vertex_map.push_back(v);
    }
  }
  std::vector<Cube> cubes;
  for (int c = 0; c < cx.num_cubes(); ++c) {
    const Cube& cu = cx.cube(c);
    for (int s = 0; s < 2; ++s) {
      Cube n;
      n.dim = cu.dim;
      for (int q = 0; q < (1 << cu.dim); ++q) n.verts.push_back(2 * cu.verts[q] + (s ^ (std::popcount(unsigned(q)) & 1)));
      if (cu.dim >= 2) {
        for (int i = 0; i < cu.dim; ++i)
          for (int b = 0; b < 2; ++b) {
            const FaceRef& f = cu.faces[2 * i + b];
            int sheet = s ^ b ^ (std::popcount(f.sym.flip) & 1);
            n.faces.push_back(FaceRef{2 * f.cube + sheet, f.sym});
          }
      }
      cubes.push_back(n);
      out.cube_map.push_back(c);
    }
  }
  out.cover = CubeComplex(std::move(names), std::move(cubes));
  return out;
}

}  // namespace cubecx
