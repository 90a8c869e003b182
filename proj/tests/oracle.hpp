#pragma once

// Brute-force reference computations, written without the library's algorithms.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "cubecx/complex.hpp"

namespace oracle {

using cubecx::CubeComplex;

// Edge classes under "opposite in a square", by relaxing labels to a fixed point.
// Uses the stored face references rather than corner arithmetic.
inline std::vector<int> wall_labels(const CubeComplex& cx) {
  std::vector<int> label(cx.num_cubes(), -1);
  for (int e : cx.edges()) label[e] = e;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int c = 0; c < cx.num_cubes(); ++c) {
      const auto& cu = cx.cube(c);
      if (cu.dim != 2) continue;
      for (int k = 0; k < 2; ++k) {
        int a = cu.faces[2 * k].cube, b = cu.faces[2 * k + 1].cube;
        int m = std::min(label[a], label[b]);
        if (label[a] != m || label[b] != m) {
          label[a] = label[b] = m;
          changed = true;
        }
      }
    }
  }
  return label;
}

inline int count_walls(const CubeComplex& cx) {
  auto l = wall_labels(cx);
  std::set<int> s;
  for (int e : cx.edges()) s.insert(l[e]);
  return static_cast<int>(s.size());
}

// All-pairs edge distances by Floyd-Warshall.
inline std::vector<std::vector<int>> distances(const CubeComplex& cx) {
  const int n = cx.num_vertices();
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (int e : cx.edges()) {
    int a = cx.cube(e).verts[0], b = cx.cube(e).verts[1];
    if (a != b) d[a][b] = d[b][a] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Connected components of the 1-skeleton with the given edges deleted.
inline std::vector<int> components_without(const CubeComplex& cx, const std::set<int>& removed) {
  const int n = cx.num_vertices();
  std::vector<int> comp(n);
  for (int v = 0; v < n; ++v) comp[v] = v;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e : cx.edges()) {
      if (removed.count(e)) continue;
      int a = cx.cube(e).verts[0], b = cx.cube(e).verts[1];
      int m = std::min(comp[a], comp[b]);
      if (comp[a] != m || comp[b] != m) {
        comp[a] = comp[b] = m;
        changed = true;
      }
    }
  }
  return comp;
}

// True when `phi` is a bijection on vertices carrying the multiset of cube
// vertex sets of `a` onto that of `b` (with dimensions).
inline bool is_isomorphism(const CubeComplex& a, const CubeComplex& b, const std::vector<int>& phi) {
  if (a.num_vertices() != b.num_vertices() || a.num_cubes() != b.num_cubes()) return false;
  std::vector<int> seen(b.num_vertices(), 0);
  for (int v : phi) {
    if (v < 0 || v >= b.num_vertices() || seen[v]) return false;
    seen[v] = 1;
  }
  std::multiset<std::pair<int, std::vector<int>>> ma, mb;
  for (const auto& c : a.cubes()) {
    std::vector<int> vs;
    for (int v : c.verts) vs.push_back(phi[v]);
    std::sort(vs.begin(), vs.end());
    ma.insert({c.dim, vs});
  }
  for (const auto& c : b.cubes()) {
    std::vector<int> vs = c.verts;
    std::sort(vs.begin(), vs.end());
    mb.insert({c.dim, vs});
  }
  return ma == mb;
}

// Number of maps V -> [n] that are proper on the given edge list.
inline long long count_proper(int nodes, const std::vector<std::pair<int, int>>& edges, int n) {
  long long total = 0;
  std::vector<int> c(nodes, 1);
  while (true) {
    bool ok = true;
    for (auto [a, b] : edges) ok = ok && c[a] != c[b];
    if (ok) ++total;
    int i = 0;
    while (i < nodes && c[i] == n) c[i++] = 1;
    if (i == nodes) break;
    ++c[i];
  }
  return total;
}

}  // namespace oracle
