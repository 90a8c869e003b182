#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubecx/error.hpp"

namespace cubecx {

// Symmetry of the d-cube {0,1}^d. Bit i of a corner goes to bit perm[i] after
// xor with bit i of flip.
struct Sym {
  std::vector<int> perm;
  unsigned flip = 0;

  int dim() const { return static_cast<int>(perm.size()); }
  int apply(int q) const;
  Sym inverse() const;
  static Sym identity(int d);
  // Identity first, then permutations in lexicographic order, each with all flips.
  static const std::vector<Sym>& all(int d);
};

// Array R with R[s(q)] = a[q].
std::vector<int> relabel(const std::vector<int>& a, const Sym& s);
std::vector<int> canonical_array(const std::vector<int>& a, int dim);
// First symmetry s with induced[q] == stored[s(q)] for all q.
std::optional<Sym> match_face(const std::vector<int>& induced, const std::vector<int>& stored, int dim);
// Sub-array of a d-cube array obtained by fixing coordinate i to bit b.
std::vector<int> face_array(const std::vector<int>& a, int dim, int i, int b);

struct RawCube {
  int dim = 0;
  std::vector<std::string> verts;
  std::vector<int> faces;  // optional: 2*dim indices into the cube list, order (0,lo),(0,hi),(1,lo),...
};

struct RawComplex {
  std::vector<std::string> vertices;
  std::vector<RawCube> cubes;
};

struct Issue {
  std::string kind;
  int cube = -1;
  std::string detail;
};

struct ValidationReport {
  std::vector<Issue> issues;
  bool ok() const { return issues.empty(); }
  int count(const std::string& kind) const;
  std::string str() const;
};

ValidationReport validate(const RawComplex& raw);
RawComplex auto_close(const RawComplex& raw);

struct FaceRef {
  int cube = -1;  // vertex id when the face is 0-dimensional
  Sym sym;
};

struct Cube {
  int dim = 0;
  std::vector<int> verts;
  std::vector<FaceRef> faces;
};

struct EdgeEnd {
  int edge = -1;
  int end = 0;
  auto operator<=>(const EdgeEnd&) const = default;
};

struct Cell {
  int dim = 0;
  int id = -1;  // vertex id for dim 0, cube id otherwise
  auto operator<=>(const Cell&) const = default;
};

struct Located {
  Cell cell;
  int corner = 0;  // corner of the located face in its own coordinates
};

class CubeComplex {
 public:
  CubeComplex() = default;
  // Cubes of dimension >= 1. Empty face lists are resolved from vertex arrays.
  CubeComplex(std::vector<std::string> names, std::vector<Cube> cubes);
  static CubeComplex from_raw(const RawComplex& raw);
  RawComplex to_raw() const;

  int num_vertices() const { return static_cast<int>(names_.size()); }
  int num_cubes() const { return static_cast<int>(cubes_.size()); }
  int dimension() const { return dimension_; }
  int count_dim(int d) const;

  const std::string& name(int v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  int vertex(const std::string& name) const;
  std::optional<int> find_vertex(const std::string& name) const;

  const Cube& cube(int c) const { return cubes_.at(c); }
  const std::vector<Cube>& cubes() const { return cubes_; }
  const std::vector<int>& edges() const { return edges_; }
  bool is_edge(int c) const { return c >= 0 && c < num_cubes() && cubes_[c].dim == 1; }

  const std::vector<EdgeEnd>& ends_at(int v) const { return ends_at_.at(v); }
  const std::vector<int>& cubes_at(int v) const { return cubes_at_.at(v); }
  const std::vector<std::vector<int>>& cubes_by_dim() const { return by_dim_; }

  int endpoint(EdgeEnd e) const { return cubes_[e.edge].verts[e.end]; }
  int other_vertex(EdgeEnd e) const { return cubes_[e.edge].verts[1 - e.end]; }
  static EdgeEnd reverse(EdgeEnd e) { return {e.edge, 1 - e.end}; }
  std::vector<int> neighbours(int v) const;

  Located locate(int c, unsigned free_mask, int corner) const;
  EdgeEnd edge_at(int c, int corner, int k) const;

  // Cubes whose canonical vertex array equals that of the given array.
  std::vector<int> find_cubes(int dim, const std::vector<int>& verts) const;
  // True when no two cubes share a canonical array (cubes are determined by vertices).
  bool cubes_determined() const { return determined_; }

  std::vector<std::vector<int>> distances() const;
  std::vector<int> bfs(int source) const;
  int diameter() const;
  bool connected() const;

 private:
  void finalize();

  std::vector<std::string> names_;
  std::map<std::string, int> index_;
  std::vector<Cube> cubes_;
  std::vector<int> edges_;
  std::vector<std::vector<int>> by_dim_;
  std::vector<std::vector<EdgeEnd>> ends_at_;
  std::vector<std::vector<int>> cubes_at_;
  std::map<std::pair<int, std::vector<int>>, std::vector<int>> canon_;
  int dimension_ = 0;
  bool determined_ = true;
};

struct VertexLink {
  int base = -1;
  std::vector<EdgeEnd> ends;
  std::vector<std::vector<int>> simplices;      // sorted indices into ends
  std::vector<std::pair<int, int>> sources;     // (cube, corner) producing each simplex
};

VertexLink link(const CubeComplex& cx, int v);

struct SimpleResult {
  bool simple = true;
  int vertex = -1;
  std::pair<int, int> first{-1, -1};
  std::pair<int, int> second{-1, -1};
  std::vector<EdgeEnd> simplex;
};
SimpleResult is_simple(const CubeComplex& cx);

struct NpcResult {
  bool npc = true;
  int vertex = -1;
  std::vector<EdgeEnd> clique;
};
NpcResult is_npc(const CubeComplex& cx);

CubeComplex subdivide(const CubeComplex& cx);
CubeComplex product(const CubeComplex& a, const CubeComplex& b);

// Vertex bijection a -> b carrying cubes onto cubes, if one exists.
std::optional<std::vector<int>> find_isomorphism(const CubeComplex& a, const CubeComplex& b);
bool isomorphic(const CubeComplex& a, const CubeComplex& b);
// Calls f on every isomorphism until it returns false.
void for_each_isomorphism(const CubeComplex& a, const CubeComplex& b,
                          const std::function<bool(const std::vector<int>&)>& f);

}  // namespace cubecx
