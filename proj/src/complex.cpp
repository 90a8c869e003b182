#include "cubecx/complex.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace cubecx {

namespace {

int insert_bit(int u, int i, int b) {
  int low = u & ((1 << i) - 1);
  int high = (u >> i) << (i + 1);
  return low | (b << i) | high;
}

int drop_bit(int q, int i) {
  int low = q & ((1 << i) - 1);
  return low | ((q >> (i + 1)) << i);
}

unsigned permute_mask(const Sym& s, unsigned mask) {
  unsigned r = 0;
  for (int i = 0; i < s.dim(); ++i)
    if (mask >> i & 1u) r |= 1u << s.perm[i];
  return r;
}

int popcount(unsigned x) { return __builtin_popcount(x); }

}  // namespace

// ---- Sym ----

int Sym::apply(int q) const {
  int r = 0;
  for (int i = 0; i < dim(); ++i) {
    int b = ((q >> i) & 1) ^ ((flip >> i) & 1);
    r |= b << perm[i];
  }
  return r;
}

Sym Sym::inverse() const {
  Sym s;
  s.perm.assign(perm.size(), 0);
  for (int i = 0; i < dim(); ++i) {
    s.perm[perm[i]] = i;
    if (flip >> i & 1u) s.flip |= 1u << perm[i];
  }
  return s;
}

Sym Sym::identity(int d) {
  Sym s;
  s.perm.resize(d);
  std::iota(s.perm.begin(), s.perm.end(), 0);
  return s;
}

const std::vector<Sym>& Sym::all(int d) {
  static std::map<int, std::vector<Sym>> cache;
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  std::vector<Sym> out;
  std::vector<int> p(d);
  std::iota(p.begin(), p.end(), 0);
  do {
    for (unsigned f = 0; f < (1u << d); ++f) out.push_back(Sym{p, f});
  } while (std::next_permutation(p.begin(), p.end()));
  return cache.emplace(d, std::move(out)).first->second;
}

std::vector<int> relabel(const std::vector<int>& a, const Sym& s) {
  std::vector<int> r(a.size());
  for (int q = 0; q < static_cast<int>(a.size()); ++q) r[s.apply(q)] = a[q];
  return r;
}

std::vector<int> canonical_array(const std::vector<int>& a, int dim) {
  std::vector<int> best;
  for (const Sym& s : Sym::all(dim)) {
    auto r = relabel(a, s);
    if (best.empty() || r < best) best = std::move(r);
  }
  return best;
}

std::optional<Sym> match_face(const std::vector<int>& induced, const std::vector<int>& stored, int dim) {
  if (induced.size() != stored.size()) return std::nullopt;
  for (const Sym& s : Sym::all(dim)) {
    bool ok = true;
    for (int q = 0; q < static_cast<int>(induced.size()) && ok; ++q) ok = induced[q] == stored[s.apply(q)];
    if (ok) return s;
  }
  return std::nullopt;
}

std::vector<int> face_array(const std::vector<int>& a, int dim, int i, int b) {
  std::vector<int> r(std::size_t(1) << (dim - 1));
  for (int u = 0; u < static_cast<int>(r.size()); ++u) r[u] = a[insert_bit(u, i, b)];
  return r;
}

// ---- validation ----

int ValidationReport::count(const std::string& kind) const {
  return static_cast<int>(std::count_if(issues.begin(), issues.end(), [&](const Issue& i) { return i.kind == kind; }));
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const auto& i : issues) {
    os << i.kind;
    if (i.cube >= 0) os << " (cube " << i.cube << ")";
    if (!i.detail.empty()) os << ": " << i.detail;
    os << "\n";
  }
  return os.str();
}

namespace {

void check_shape(const RawComplex& raw) {
  for (std::size_t i = 0; i < raw.cubes.size(); ++i) {
    const auto& c = raw.cubes[i];
    if (c.dim < 0 || c.dim > 20 || c.verts.size() != (std::size_t(1) << c.dim)) {
      throw StructuralError("cube " + std::to_string(i) + ": vertex array of size " + std::to_string(c.verts.size()) +
                            " is not 2^" + std::to_string(c.dim));
    }
  }
}

std::string join_names(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return "[" + s + "]";
}

}  // namespace

ValidationReport validate(const RawComplex& raw) {
  check_shape(raw);
  ValidationReport rep;
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < raw.vertices.size(); ++i) {
    if (!index.emplace(raw.vertices[i], static_cast<int>(i)).second)
      rep.issues.push_back({"duplicate vertex", -1, raw.vertices[i]});
  }
  const int n = static_cast<int>(raw.cubes.size());
  std::vector<std::vector<int>> ids(n);
  std::vector<char> good(n, 1);
  int maxdim = 0;
  for (int i = 0; i < n; ++i) {
    for (const auto& name : raw.cubes[i].verts) {
      auto it = index.find(name);
      if (it == index.end()) {
        rep.issues.push_back({"dangling vertex", i, name});
        good[i] = 0;
        break;
      }
      ids[i].push_back(it->second);
    }
    maxdim = std::max(maxdim, raw.cubes[i].dim);
  }
  std::map<std::pair<int, std::vector<int>>, std::vector<int>> canon;
  std::vector<std::vector<int>> canon_of(n);
  for (int i = 0; i < n; ++i) {
    if (!good[i] || raw.cubes[i].dim == 0) continue;
    canon_of[i] = canonical_array(ids[i], raw.cubes[i].dim);
    canon[{raw.cubes[i].dim, canon_of[i]}].push_back(i);
  }
  std::vector<char> referenced(n, 0);
  for (int i = 0; i < n; ++i) {
    const auto& c = raw.cubes[i];
    if (!good[i] || c.dim == 0) continue;
    if (!c.faces.empty()) {
      if (c.dim == 1) {
        rep.issues.push_back({"explicit faces on an edge", i, ""});
        continue;
      }
      if (static_cast<int>(c.faces.size()) != 2 * c.dim) {
        rep.issues.push_back({"bad face list", i, "expected " + std::to_string(2 * c.dim) + " entries"});
        continue;
      }
      for (int k = 0; k < c.dim; ++k) {
        for (int b = 0; b < 2; ++b) {
          int f = c.faces[2 * k + b];
          if (f < 0 || f >= n || !good[f] || raw.cubes[f].dim != c.dim - 1) {
            rep.issues.push_back({"face mismatch", i, "face entry " + std::to_string(2 * k + b)});
            continue;
          }
          referenced[f] = 1;
          if (!match_face(face_array(ids[i], c.dim, k, b), ids[f], c.dim - 1))
            rep.issues.push_back({"face mismatch", i, "cube " + std::to_string(f) + " does not fit"});
        }
      }
      continue;
    }
    if (c.dim < 2) continue;
    for (int k = 0; k < c.dim; ++k) {
      for (int b = 0; b < 2; ++b) {
        auto fa = face_array(ids[i], c.dim, k, b);
        auto it = canon.find({c.dim - 1, canonical_array(fa, c.dim - 1)});
        std::vector<std::string> fn;
        for (int v : fa) fn.push_back(raw.vertices[v]);
        if (it == canon.end()) {
          rep.issues.push_back({"missing face", i, join_names(fn)});
        } else if (it->second.size() > 1) {
          rep.issues.push_back({"ambiguous face", i, join_names(fn)});
        }
      }
    }
  }
  for (const auto& [key, members] : canon) {
    if (members.size() < 2 || key.first == 1) continue;  // multi-edges and loops are data, not mistakes
    bool all_ref = std::all_of(members.begin(), members.end(), [&](int m) { return referenced[m]; });
    if (all_ref) continue;
    for (std::size_t k = 1; k < members.size(); ++k)
      rep.issues.push_back({"duplicate cube", members[k], "same vertices as cube " + std::to_string(members[0])});
  }
  if (maxdim >= 1) {
    std::vector<char> used(raw.vertices.size(), 0);
    for (int i = 0; i < n; ++i)
      if (good[i] && raw.cubes[i].dim >= 1)
        for (int v : ids[i]) used[v] = 1;
    for (std::size_t v = 0; v < used.size(); ++v)
      if (!used[v]) rep.issues.push_back({"isolated vertex", -1, raw.vertices[v]});
  }
  return rep;
}

RawComplex auto_close(const RawComplex& raw) {
  check_shape(raw);
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < raw.vertices.size(); ++i) index.emplace(raw.vertices[i], static_cast<int>(i));
  auto to_ids = [&](const RawCube& c) {
    std::vector<int> r;
    for (const auto& nm : c.verts) {
      auto it = index.find(nm);
      if (it == index.end()) throw StructuralError("unknown vertex '" + nm + "'");
      r.push_back(it->second);
    }
    return r;
  };
  RawComplex out = raw;
  std::set<std::pair<int, std::vector<int>>> known;
  std::map<std::pair<int, std::vector<int>>, std::vector<int>> by_vertex_set;
  auto register_cube = [&](const std::vector<int>& ids, int dim) {
    auto can = canonical_array(ids, dim);
    auto sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    known.insert({dim, can});
    by_vertex_set[{dim, sorted}] = can;
  };
  for (const auto& c : out.cubes)
    if (c.dim >= 1) register_cube(to_ids(c), c.dim);
  for (std::size_t idx = 0; idx < out.cubes.size(); ++idx) {
    const RawCube c = out.cubes[idx];
    if (c.dim < 2 || !c.faces.empty()) continue;
    auto ids = to_ids(c);
    for (int k = 0; k < c.dim; ++k) {
      for (int b = 0; b < 2; ++b) {
        auto fa = face_array(ids, c.dim, k, b);
        auto can = canonical_array(fa, c.dim - 1);
        if (known.count({c.dim - 1, can})) continue;
        auto sorted = fa;
        std::sort(sorted.begin(), sorted.end());
        if (by_vertex_set.count({c.dim - 1, sorted}))
          throw StructuralError("contradictory face data: face of cube " + std::to_string(idx) +
                                " has the vertices of an existing cube with a different structure");
        RawCube f;
        f.dim = c.dim - 1;
        for (int v : fa) f.verts.push_back(raw.vertices[v]);
        out.cubes.push_back(f);
        register_cube(fa, f.dim);
      }
    }
  }
  return out;
}

// ---- CubeComplex ----

CubeComplex::CubeComplex(std::vector<std::string> names, std::vector<Cube> cubes)
    : names_(std::move(names)), cubes_(std::move(cubes)) {
  finalize();
}

void CubeComplex::finalize() {
  index_.clear();
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (!index_.emplace(names_[i], static_cast<int>(i)).second)
      throw StructuralError("duplicate vertex name '" + names_[i] + "'");
  dimension_ = 0;
  for (std::size_t c = 0; c < cubes_.size(); ++c) {
    const Cube& cu = cubes_[c];
    if (cu.dim < 1 || cu.verts.size() != (std::size_t(1) << cu.dim))
      throw StructuralError("cube " + std::to_string(c) + ": vertex array is not 2^dim with dim >= 1");
    for (int v : cu.verts)
      if (v < 0 || v >= num_vertices()) throw StructuralError("cube " + std::to_string(c) + ": vertex out of range");
    dimension_ = std::max(dimension_, cu.dim);
  }
  by_dim_.assign(dimension_ + 1, {});
  canon_.clear();
  for (std::size_t c = 0; c < cubes_.size(); ++c) {
    by_dim_[cubes_[c].dim].push_back(static_cast<int>(c));
    canon_[{cubes_[c].dim, canonical_array(cubes_[c].verts, cubes_[c].dim)}].push_back(static_cast<int>(c));
  }
  determined_ = std::all_of(canon_.begin(), canon_.end(), [](const auto& kv) { return kv.second.size() == 1; });
  for (std::size_t c = 0; c < cubes_.size(); ++c) {
    Cube& cu = cubes_[c];
    const std::string where = "cube " + std::to_string(c);
    if (cu.dim == 1) {
      if (cu.faces.empty()) cu.faces = {FaceRef{cu.verts[0], Sym::identity(0)}, FaceRef{cu.verts[1], Sym::identity(0)}};
      if (cu.faces.size() != 2 || cu.faces[0].cube != cu.verts[0] || cu.faces[1].cube != cu.verts[1])
        throw StructuralError(where + ": edge faces must be its endpoints");
      continue;
    }
    if (cu.faces.empty()) {
      for (int k = 0; k < cu.dim; ++k) {
        for (int b = 0; b < 2; ++b) {
          auto fa = face_array(cu.verts, cu.dim, k, b);
          auto it = canon_.find({cu.dim - 1, canonical_array(fa, cu.dim - 1)});
          if (it == canon_.end()) throw StructuralError(where + ": missing face");
          if (it->second.size() != 1) throw StructuralError(where + ": ambiguous face, explicit faces required");
          int f = it->second[0];
          cu.faces.push_back(FaceRef{f, *match_face(fa, cubes_[f].verts, cu.dim - 1)});
        }
      }
      continue;
    }
    if (static_cast<int>(cu.faces.size()) != 2 * cu.dim) throw StructuralError(where + ": bad face list");
    for (int k = 0; k < cu.dim; ++k) {
      for (int b = 0; b < 2; ++b) {
        const FaceRef& fr = cu.faces[2 * k + b];
        if (fr.cube < 0 || fr.cube >= num_cubes() || cubes_[fr.cube].dim != cu.dim - 1 || fr.sym.dim() != cu.dim - 1)
          throw StructuralError(where + ": face reference out of range");
        auto fa = face_array(cu.verts, cu.dim, k, b);
        const auto& st = cubes_[fr.cube].verts;
        for (int q = 0; q < static_cast<int>(fa.size()); ++q)
          if (fa[q] != st[fr.sym.apply(q)]) throw StructuralError(where + ": face does not fit");
      }
    }
  }
  edges_ = dimension_ >= 1 ? by_dim_[1] : std::vector<int>{};
  ends_at_.assign(num_vertices(), {});
  cubes_at_.assign(num_vertices(), {});
  for (int e : edges_)
    for (int b = 0; b < 2; ++b) ends_at_[cubes_[e].verts[b]].push_back({e, b});
  for (std::size_t c = 0; c < cubes_.size(); ++c) {
    for (int v : cubes_[c].verts)
      if (cubes_at_[v].empty() || cubes_at_[v].back() != static_cast<int>(c)) cubes_at_[v].push_back(static_cast<int>(c));
  }
}

CubeComplex CubeComplex::from_raw(const RawComplex& raw) {
  auto rep = validate(raw);
  if (!rep.ok()) throw StructuralError("invalid complex:\n" + rep.str());
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < raw.vertices.size(); ++i) index.emplace(raw.vertices[i], static_cast<int>(i));
  std::vector<int> newid(raw.cubes.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < raw.cubes.size(); ++i)
    if (raw.cubes[i].dim >= 1) newid[i] = next++;
  std::vector<Cube> cubes;
  for (std::size_t i = 0; i < raw.cubes.size(); ++i) {
    const auto& rc = raw.cubes[i];
    if (rc.dim == 0) continue;
    Cube c;
    c.dim = rc.dim;
    for (const auto& nm : rc.verts) c.verts.push_back(index.at(nm));
    cubes.push_back(c);
  }
  for (std::size_t i = 0; i < raw.cubes.size(); ++i) {
    const auto& rc = raw.cubes[i];
    if (rc.dim < 2 || rc.faces.empty()) continue;
    Cube& c = cubes[newid[i]];
    for (int k = 0; k < rc.dim; ++k) {
      for (int b = 0; b < 2; ++b) {
        int f = newid[rc.faces[2 * k + b]];
        auto fa = face_array(c.verts, c.dim, k, b);
        c.faces.push_back(FaceRef{f, *match_face(fa, cubes[f].verts, c.dim - 1)});
      }
    }
  }
  return CubeComplex(raw.vertices, std::move(cubes));
}

RawComplex CubeComplex::to_raw() const {
  RawComplex raw;
  raw.vertices = names_;
  for (const Cube& c : cubes_) {
    RawCube rc;
    rc.dim = c.dim;
    for (int v : c.verts) rc.verts.push_back(names_[v]);
    if (!determined_ && c.dim >= 2)
      for (const auto& f : c.faces) rc.faces.push_back(f.cube);
    raw.cubes.push_back(rc);
  }
  return raw;
}

int CubeComplex::count_dim(int d) const {
  if (d == 0) return num_vertices();
  if (d < 0 || d > dimension_) return 0;
  return static_cast<int>(by_dim_[d].size());
}

int CubeComplex::vertex(const std::string& name) const {
  auto v = find_vertex(name);
  if (!v) throw PreconditionError("unknown vertex '" + name + "'");
  return *v;
}

std::optional<int> CubeComplex::find_vertex(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> CubeComplex::neighbours(int v) const {
  std::vector<int> r;
  for (const auto& e : ends_at(v)) r.push_back(other_vertex(e));
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

Located CubeComplex::locate(int c, unsigned free_mask, int corner) const {
  Cell cur{cubes_.at(c).dim, c};
  int q = corner;
  unsigned mask = free_mask;
  while (true) {
    if (cur.dim == 0) return {cur, 0};
    const Cube& cu = cubes_[cur.id];
    const int d = cu.dim;
    const unsigned full = (1u << d) - 1;
    mask &= full;
    q &= static_cast<int>(full);
    if (mask == full) return {cur, q};
    int i = d - 1;
    while (mask >> i & 1u) --i;
    const FaceRef& f = cu.faces[2 * i + ((q >> i) & 1)];
    if (d == 1) return {Cell{0, f.cube}, 0};
    q = f.sym.apply(drop_bit(q, i));
    mask = permute_mask(f.sym, static_cast<unsigned>(drop_bit(static_cast<int>(mask), i)));
    cur = Cell{d - 1, f.cube};
  }
}

EdgeEnd CubeComplex::edge_at(int c, int corner, int k) const {
  Located l = locate(c, 1u << k, corner);
  return {l.cell.id, l.corner};
}

std::vector<int> CubeComplex::find_cubes(int dim, const std::vector<int>& verts) const {
  auto it = canon_.find({dim, canonical_array(verts, dim)});
  if (it == canon_.end()) return {};
  return it->second;
}

std::vector<int> CubeComplex::bfs(int source) const {
  std::vector<int> dist(num_vertices(), -1);
  std::deque<int> dq{source};
  dist[source] = 0;
  while (!dq.empty()) {
    int v = dq.front();
    dq.pop_front();
    for (const auto& e : ends_at(v)) {
      int w = other_vertex(e);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        dq.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<std::vector<int>> CubeComplex::distances() const {
  std::vector<std::vector<int>> d;
  for (int v = 0; v < num_vertices(); ++v) d.push_back(bfs(v));
  return d;
}

int CubeComplex::diameter() const {
  int best = 0;
  for (int v = 0; v < num_vertices(); ++v)
    for (int x : bfs(v)) best = std::max(best, x);
  return best;
}

bool CubeComplex::connected() const {
  if (num_vertices() == 0) return true;
  auto d = bfs(0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

// ---- links ----

VertexLink link(const CubeComplex& cx, int v) {
  if (v < 0 || v >= cx.num_vertices()) throw PreconditionError("link: unknown vertex " + std::to_string(v));
  VertexLink lk;
  lk.base = v;
  lk.ends = cx.ends_at(v);
  std::map<EdgeEnd, int> pos;
  for (std::size_t i = 0; i < lk.ends.size(); ++i) pos[lk.ends[i]] = static_cast<int>(i);
  for (int c : cx.cubes_at(v)) {
    const Cube& cu = cx.cube(c);
    for (int q = 0; q < (1 << cu.dim); ++q) {
      if (cu.verts[q] != v) continue;
      std::vector<int> s;
      for (int k = 0; k < cu.dim; ++k) s.push_back(pos.at(cx.edge_at(c, q, k)));
      std::sort(s.begin(), s.end());
      lk.simplices.push_back(s);
      lk.sources.push_back({c, q});
    }
  }
  return lk;
}

SimpleResult is_simple(const CubeComplex& cx) {
  for (int v = 0; v < cx.num_vertices(); ++v) {
    VertexLink lk = link(cx, v);
    std::map<std::vector<int>, std::size_t> seen;
    for (std::size_t i = 0; i < lk.simplices.size(); ++i) {
      const auto& s = lk.simplices[i];
      std::vector<EdgeEnd> ends;
      for (int x : s) ends.push_back(lk.ends[x]);
      if (std::adjacent_find(s.begin(), s.end()) != s.end())
        return SimpleResult{false, v, lk.sources[i], lk.sources[i], ends};
      auto [it, fresh] = seen.emplace(s, i);
      if (!fresh) return SimpleResult{false, v, lk.sources[it->second], lk.sources[i], ends};
    }
  }
  return {};
}

namespace {

bool first_empty_clique(const std::vector<std::vector<char>>& adj, const std::set<std::vector<int>>& simplices,
                        std::vector<int>& clique, std::vector<int>& found) {
  const int n = static_cast<int>(adj.size());
  if (clique.size() >= 3 && !simplices.count(clique)) {
    found = clique;
    return true;
  }
  int start = clique.empty() ? 0 : clique.back() + 1;
  for (int x = start; x < n; ++x) {
    bool ok = std::all_of(clique.begin(), clique.end(), [&](int y) { return adj[x][y]; });
    if (!ok) continue;
    clique.push_back(x);
    if (first_empty_clique(adj, simplices, clique, found)) return true;
    clique.pop_back();
  }
  return false;
}

}  // namespace

NpcResult is_npc(const CubeComplex& cx) {
  for (int v = 0; v < cx.num_vertices(); ++v) {
    VertexLink lk = link(cx, v);
    const int n = static_cast<int>(lk.ends.size());
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    std::set<std::vector<int>> simplices(lk.simplices.begin(), lk.simplices.end());
    for (const auto& s : lk.simplices)
      if (s.size() == 2 && s[0] != s[1]) adj[s[0]][s[1]] = adj[s[1]][s[0]] = 1;
    std::vector<int> clique, found;
    if (first_empty_clique(adj, simplices, clique, found)) {
      NpcResult r{false, v, {}};
      for (int x : found) r.clique.push_back(lk.ends[x]);
      return r;
    }
  }
  return {};
}

// ---- subdivision and products ----

CubeComplex subdivide(const CubeComplex& cx) {
  const int nv = cx.num_vertices();
  std::vector<std::string> names = cx.names();
  std::set<std::string> taken(names.begin(), names.end());
  for (int c = 0; c < cx.num_cubes(); ++c) {
    std::set<int> vs(cx.cube(c).verts.begin(), cx.cube(c).verts.end());
    std::string nm = "b" + std::to_string(c) + "(";
    bool first = true;
    for (int v : vs) {
      nm += (first ? "" : ",") + cx.name(v);
      first = false;
    }
    nm += ")";
    while (taken.count(nm)) nm = "_" + nm;
    taken.insert(nm);
    names.push_back(nm);
  }
  auto bary = [&](const Cell& cell) { return cell.dim == 0 ? cell.id : nv + cell.id; };

  // Small cubes are indexed by (cube C, freed coordinates A, corner q with A-bits cleared).
  struct Key {
    int c;
    unsigned a;
    int q;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, int> id;
  std::vector<Key> keys;
  for (int c = 0; c < cx.num_cubes(); ++c) {
    const int d = cx.cube(c).dim;
    for (unsigned a = 0; a < (1u << d); ++a) {
      if (popcount(a) == d) continue;
      for (int q = 0; q < (1 << d); ++q) {
        if (q & static_cast<int>(a)) continue;
        id[{c, a, q}] = static_cast<int>(keys.size());
        keys.push_back({c, a, q});
      }
    }
  }
  std::vector<Cube> cubes(keys.size());
  for (std::size_t s = 0; s < keys.size(); ++s) {
    const auto [c, a, q] = keys[s];
    const Cube& cu = cx.cube(c);
    const int d = cu.dim;
    std::vector<int> nona;
    for (int i = 0; i < d; ++i)
      if (!(a >> i & 1u)) nona.push_back(i);
    const int m = static_cast<int>(nona.size());
    Cube& out = cubes[s];
    out.dim = m;
    out.verts.resize(std::size_t(1) << m);
    for (int t = 0; t < (1 << m); ++t) {
      unsigned freed = a;
      for (int k = 0; k < m; ++k)
        if (t >> k & 1) freed |= 1u << nona[k];
      out.verts[t] = bary(cx.locate(c, freed, q).cell);
    }
    for (int k = 0; k < m; ++k) {
      const int i = nona[k];
      // bit 0: stay on the facet of C through the corner
      {
        const FaceRef& f = cu.faces[2 * i + ((q >> i) & 1)];
        if (d == 1) {
          out.faces.push_back(FaceRef{f.cube, Sym::identity(0)});
        } else {
          unsigned a2 = permute_mask(f.sym, static_cast<unsigned>(drop_bit(static_cast<int>(a), i)));
          int q2 = f.sym.apply(drop_bit(q, i)) & ~static_cast<int>(a2);
          if (m == 1) {
            out.faces.push_back(FaceRef{bary(cx.locate(c, a, q).cell), Sym::identity(0)});
          } else {
            std::vector<int> nona2;
            for (int t = 0; t < d - 1; ++t)
              if (!(a2 >> t & 1u)) nona2.push_back(t);
            Sym sy;
            for (int kk = 0; kk < m; ++kk) {
              if (kk == k) continue;
              int pos_in_face = nona[kk] < i ? nona[kk] : nona[kk] - 1;
              int target = f.sym.perm[pos_in_face];
              sy.perm.push_back(static_cast<int>(std::find(nona2.begin(), nona2.end(), target) - nona2.begin()));
            }
            out.faces.push_back(FaceRef{id.at({f.cube, a2, q2}), sy});
          }
        }
      }
      // bit 1: coordinate i freed
      {
        unsigned a2 = a | (1u << i);
        int q2 = q & ~(1 << i);
        if (m == 1) {
          out.faces.push_back(FaceRef{nv + c, Sym::identity(0)});
        } else {
          out.faces.push_back(FaceRef{id.at({c, a2, q2}), Sym::identity(m - 1)});
        }
      }
    }
  }
  return CubeComplex(std::move(names), std::move(cubes));
}

CubeComplex product(const CubeComplex& a, const CubeComplex& b) {
  std::vector<Cell> ca, cb;
  for (int v = 0; v < a.num_vertices(); ++v) ca.push_back({0, v});
  for (int c = 0; c < a.num_cubes(); ++c) ca.push_back({a.cube(c).dim, c});
  for (int v = 0; v < b.num_vertices(); ++v) cb.push_back({0, v});
  for (int c = 0; c < b.num_cubes(); ++c) cb.push_back({b.cube(c).dim, c});
  std::vector<std::string> names;
  for (int u = 0; u < a.num_vertices(); ++u)
    for (int v = 0; v < b.num_vertices(); ++v) names.push_back("(" + a.name(u) + "," + b.name(v) + ")");
  auto vid = [&](int u, int v) { return u * b.num_vertices() + v; };
  std::map<std::pair<Cell, Cell>, int> id;
  std::vector<std::pair<Cell, Cell>> keys;
  for (const auto& x : ca)
    for (const auto& y : cb) {
      if (x.dim + y.dim == 0) continue;
      id[{x, y}] = static_cast<int>(keys.size());
      keys.push_back({x, y});
    }
  auto verts_of = [](const CubeComplex& cx, const Cell& c) {
    return c.dim == 0 ? std::vector<int>{c.id} : cx.cube(c.id).verts;
  };
  auto cell_ref = [&](const Cell& x, const Cell& y) {
    return x.dim + y.dim == 0 ? vid(x.id, y.id) : id.at({x, y});
  };
  std::vector<Cube> cubes(keys.size());
  for (std::size_t s = 0; s < keys.size(); ++s) {
    const auto& [x, y] = keys[s];
    const int d1 = x.dim, d2 = y.dim;
    auto va = verts_of(a, x), vb = verts_of(b, y);
    Cube& out = cubes[s];
    out.dim = d1 + d2;
    out.verts.resize(std::size_t(1) << out.dim);
    for (int qa = 0; qa < (1 << d1); ++qa)
      for (int qb = 0; qb < (1 << d2); ++qb) out.verts[qa | (qb << d1)] = vid(va[qa], vb[qb]);
    for (int i = 0; i < out.dim; ++i) {
      for (int bit = 0; bit < 2; ++bit) {
        Sym sy;
        int ref;
        if (i < d1) {
          const FaceRef& f = a.cube(x.id).faces[2 * i + bit];
          Cell fx{d1 - 1, f.cube};
          ref = cell_ref(fx, y);
          for (int j = 0; j < d1 - 1; ++j) sy.perm.push_back(f.sym.perm[j]);
          for (int j = 0; j < d2; ++j) sy.perm.push_back(d1 - 1 + j);
          sy.flip = f.sym.flip;
        } else {
          const FaceRef& f = b.cube(y.id).faces[2 * (i - d1) + bit];
          Cell fy{d2 - 1, f.cube};
          ref = cell_ref(x, fy);
          for (int j = 0; j < d1; ++j) sy.perm.push_back(j);
          for (int j = 0; j < d2 - 1; ++j) sy.perm.push_back(d1 + f.sym.perm[j]);
          sy.flip = f.sym.flip << d1;
        }
        out.faces.push_back(FaceRef{ref, out.dim == 1 ? Sym::identity(0) : sy});
      }
    }
  }
  return CubeComplex(std::move(names), std::move(cubes));
}

// ---- isomorphism ----

namespace {

struct IsoSearch {
  const CubeComplex& a;
  const CubeComplex& b;
  const std::function<bool(const std::vector<int>&)>& f;
  std::vector<std::vector<int>> nba, nbb;
  std::vector<std::set<int>> setb;
  std::vector<int> order, map, used;
  std::vector<int> sig_a, sig_b;
  bool stop = false;

  IsoSearch(const CubeComplex& a_, const CubeComplex& b_, const std::function<bool(const std::vector<int>&)>& f_)
      : a(a_), b(b_), f(f_) {
    for (int v = 0; v < a.num_vertices(); ++v) nba.push_back(a.neighbours(v));
    for (int v = 0; v < b.num_vertices(); ++v) {
      nbb.push_back(b.neighbours(v));
      setb.emplace_back(nbb.back().begin(), nbb.back().end());
    }
    sig_a = signature(a);
    sig_b = signature(b);
    std::vector<char> seen(a.num_vertices(), 0);
    for (int s = 0; s < a.num_vertices(); ++s) {
      if (seen[s]) continue;
      std::deque<int> dq{s};
      seen[s] = 1;
      while (!dq.empty()) {
        int v = dq.front();
        dq.pop_front();
        order.push_back(v);
        for (int w : nba[v])
          if (!seen[w]) {
            seen[w] = 1;
            dq.push_back(w);
          }
      }
    }
    map.assign(a.num_vertices(), -1);
    used.assign(b.num_vertices(), 0);
  }

  // Per-vertex invariant: degree and number of incident cubes per dimension.
  static std::vector<int> signature(const CubeComplex& cx) {
    std::vector<int> sig(cx.num_vertices(), 0);
    for (int v = 0; v < cx.num_vertices(); ++v) {
      int h = static_cast<int>(cx.neighbours(v).size());
      std::vector<int> per(cx.dimension() + 1, 0);
      for (int c : cx.cubes_at(v)) per[cx.cube(c).dim]++;
      for (int x : per) h = h * 131 + x;
      sig[v] = h;
    }
    return sig;
  }

  bool cubes_ok() const {
    for (const Cube& c : a.cubes()) {
      std::vector<int> img;
      for (int v : c.verts) img.push_back(map[v]);
      if (b.find_cubes(c.dim, img).empty()) return false;
    }
    return true;
  }

  void run(std::size_t pos) {
    if (stop) return;
    if (pos == order.size()) {
      if (cubes_ok() && !f(map)) stop = true;
      return;
    }
    int v = order[pos];
    std::vector<int> cands;
    int anchor = -1;
    for (int w : nba[v])
      if (map[w] >= 0) {
        anchor = w;
        break;
      }
    if (anchor >= 0) {
      cands = nbb[map[anchor]];
    } else {
      cands.resize(b.num_vertices());
      std::iota(cands.begin(), cands.end(), 0);
    }
    for (int c : cands) {
      if (used[c] || sig_a[v] != sig_b[c]) continue;
      bool ok = true;
      for (int w : nba[v])
        if (map[w] >= 0 && !setb[c].count(map[w])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      int mapped_nb = 0;
      for (int w : nba[v]) mapped_nb += map[w] >= 0;
      int used_nb = 0;
      for (int w : nbb[c]) used_nb += used[w];
      if (mapped_nb != used_nb) continue;
      map[v] = c;
      used[c] = 1;
      run(pos + 1);
      map[v] = -1;
      used[c] = 0;
      if (stop) return;
    }
  }
};

}  // namespace

void for_each_isomorphism(const CubeComplex& a, const CubeComplex& b,
                          const std::function<bool(const std::vector<int>&)>& f) {
  if (!a.cubes_determined() || !b.cubes_determined())
    throw PreconditionError("isomorphism search needs complexes whose cubes are determined by their vertices");
  if (a.num_vertices() != b.num_vertices() || a.dimension() != b.dimension()) return;
  for (int d = 1; d <= a.dimension(); ++d)
    if (a.count_dim(d) != b.count_dim(d)) return;
  IsoSearch s(a, b, f);
  s.run(0);
}

std::optional<std::vector<int>> find_isomorphism(const CubeComplex& a, const CubeComplex& b) {
  std::optional<std::vector<int>> out;
  for_each_isomorphism(a, b, [&](const std::vector<int>& m) {
    out = m;
    return false;
  });
  return out;
}

bool isomorphic(const CubeComplex& a, const CubeComplex& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace cubecx
