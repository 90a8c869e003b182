#include "cubecx/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace cubecx {

std::vector<int> induced_cube_perm(const CubeComplex& cx, const std::vector<int>& vperm) {
  if (static_cast<int>(vperm.size()) != cx.num_vertices())
    throw PreconditionError("vertex permutation has the wrong length");
  std::vector<char> hit(cx.num_vertices(), 0);
  for (int v : vperm) {
    if (v < 0 || v >= cx.num_vertices() || hit[v]) throw PreconditionError("not a vertex permutation");
    hit[v] = 1;
  }
  if (!cx.cubes_determined())
    throw PreconditionError("group actions need a complex whose cubes are determined by their vertices");
  std::vector<int> cp(cx.num_cubes());
  for (int c = 0; c < cx.num_cubes(); ++c) {
    std::vector<int> img;
    for (int v : cx.cube(c).verts) img.push_back(vperm[v]);
    auto found = cx.find_cubes(cx.cube(c).dim, img);
    if (found.size() != 1) throw PreconditionError("vertex permutation is not a cubical automorphism");
    cp[c] = found[0];
  }
  return cp;
}

void GroupAction::add(const CubeComplex& cx, const std::vector<int>& vp) {
  index_[vp] = static_cast<int>(vperm_.size());
  vperm_.push_back(vp);
  if (std::is_sorted(vp.begin(), vp.end())) {
    std::vector<int> id(cx.num_cubes());
    std::iota(id.begin(), id.end(), 0);
    cperm_.push_back(id);
  } else {
    cperm_.push_back(induced_cube_perm(cx, vp));
  }
}

GroupAction GroupAction::trivial(const CubeComplex& cx) { return generate(cx, {}); }

GroupAction GroupAction::generate(const CubeComplex& cx, const std::vector<std::vector<int>>& generators,
                                  std::size_t cap) {
  GroupAction g;
  std::vector<int> id(cx.num_vertices());
  std::iota(id.begin(), id.end(), 0);
  for (const auto& gen : generators) induced_cube_perm(cx, gen);
  g.gens_ = generators;
  g.add(cx, id);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (const auto& gen : generators) {
      std::vector<int> nxt(id.size());
      for (std::size_t v = 0; v < id.size(); ++v) nxt[v] = gen[g.vperm_[cur][v]];
      if (g.index_.count(nxt)) continue;
      if (g.vperm_.size() >= cap) throw PreconditionError("group closure exceeds cap of " + std::to_string(cap));
      g.add(cx, nxt);
      queue.push_back(static_cast<int>(g.vperm_.size()) - 1);
    }
  }
  for (const auto& gen : generators) g.gen_index_.push_back(g.index_.at(gen));
  g.inv_.resize(g.vperm_.size());
  for (std::size_t i = 0; i < g.vperm_.size(); ++i) {
    std::vector<int> inv(id.size());
    for (std::size_t v = 0; v < id.size(); ++v) inv[g.vperm_[i][v]] = static_cast<int>(v);
    g.inv_[i] = g.index_.at(inv);
  }
  return g;
}

int GroupAction::compose(int a, int b) const {
  std::vector<int> r(vperm_[a].size());
  for (std::size_t v = 0; v < r.size(); ++v) r[v] = vperm_[a][vperm_[b][v]];
  return index_.at(r);
}

int GroupAction::index_of(const std::vector<int>& vperm) const {
  auto it = index_.find(vperm);
  return it == index_.end() ? -1 : it->second;
}

std::vector<int> GroupAction::stabilizer_of_vertex(int v) const {
  std::vector<int> r;
  for (int g = 0; g < size(); ++g)
    if (vperm_[g][v] == v) r.push_back(g);
  return r;
}

std::vector<int> GroupAction::vertex_orbit_reps() const {
  if (vperm_.empty()) return {};
  const int n = static_cast<int>(vperm_[0].size());
  std::vector<char> seen(n, 0);
  std::vector<int> reps;
  for (int v = 0; v < n; ++v) {
    if (seen[v]) continue;
    reps.push_back(v);
    for (const auto& p : vperm_) seen[p[v]] = 1;
  }
  return reps;
}

GroupAction automorphism_group(const CubeComplex& cx, std::size_t cap) {
  std::vector<std::vector<int>> all;
  for_each_isomorphism(cx, cx, [&](const std::vector<int>& m) {
    all.push_back(m);
    if (all.size() > cap) throw PreconditionError("automorphism group exceeds cap");
    return true;
  });
  std::vector<int> id(cx.num_vertices());
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> gens;
  for (const auto& m : all)
    if (m != id) gens.push_back(m);
  return GroupAction::generate(cx, gens, cap);
}

}  // namespace cubecx
