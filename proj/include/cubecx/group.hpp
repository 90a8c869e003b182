#pragma once

#include <map>
#include <vector>

#include "cubecx/complex.hpp"

namespace cubecx {

// Finite group of cubical automorphisms, stored as the full list of elements.
// Element 0 is the identity.
class GroupAction {
 public:
  static constexpr std::size_t kDefaultCap = 100000;

  GroupAction() = default;
  static GroupAction trivial(const CubeComplex& cx);
  // Closes the generators under composition; throws past `cap` elements.
  static GroupAction generate(const CubeComplex& cx, const std::vector<std::vector<int>>& generators,
                              std::size_t cap = kDefaultCap);

  int size() const { return static_cast<int>(vperm_.size()); }
  bool is_trivial() const { return size() == 1; }
  const std::vector<std::vector<int>>& generators() const { return gens_; }
  const std::vector<int>& generator_indices() const { return gen_index_; }

  int vertex(int g, int v) const { return vperm_[g][v]; }
  int cube(int g, int c) const { return cperm_[g][c]; }
  const std::vector<int>& vertex_perm(int g) const { return vperm_[g]; }
  const std::vector<int>& cube_perm(int g) const { return cperm_[g]; }

  int compose(int a, int b) const;  // a after b
  int inverse(int g) const { return inv_[g]; }
  int index_of(const std::vector<int>& vperm) const;

  std::vector<int> stabilizer_of_vertex(int v) const;
  // Orbit representatives (smallest id) of vertices, in increasing order.
  std::vector<int> vertex_orbit_reps() const;

 private:
  void add(const CubeComplex& cx, const std::vector<int>& vp);

  std::vector<std::vector<int>> vperm_;
  std::vector<std::vector<int>> cperm_;
  std::vector<int> inv_;
  std::map<std::vector<int>, int> index_;
  std::vector<std::vector<int>> gens_;
  std::vector<int> gen_index_;
};

// Image of every cube under a vertex permutation; throws if some image is not a cube.
std::vector<int> induced_cube_perm(const CubeComplex& cx, const std::vector<int>& vperm);

// All cubical automorphisms of a complex whose cubes are determined by vertices.
GroupAction automorphism_group(const CubeComplex& cx, std::size_t cap = GroupAction::kDefaultCap);

}  // namespace cubecx
