#include "cubecx/gluing.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cubecx {

Ambient Ambient::make(const CubeComplex& cx, const GroupAction& g, int radius) {
  Ambient a;
  a.cx = &cx;
  a.group = &g;
  a.ws = WallSet(cx);
  a.labels = label_sides(cx, a.ws, g);
  a.hs = HalfSpaceTable(cx, a.ws, a.labels);
  a.wall_perms = a.ws.wall_perms(g);
  a.gamma = build_gamma(cx, a.ws, radius);
  return a;
}

int Ambient::endpoint_on(int edge, int side) const {
  const auto& vs = cx->cube(edge).verts;
  int w = wall_of(edge);
  return hs.side(w, vs[0]) == side ? vs[0] : vs[1];
}

EdgeClass edge_class(const Ambient& a, int edge, const Coloring& c) {
  return EdgeClass{edge, class_of_wall(a.gamma, c, a.wall_of(edge))};
}

EdgeClass act_edge_class(const Ambient& a, int g, const EdgeClass& ec) {
  return EdgeClass{a.group->cube(g, ec.edge), act_class(a.group->vertex_perm(g), a.wall_perms[g], ec.cls)};
}

int stabilizer_order(const Ambient& a, const EdgeClass& ec) {
  int n = 0;
  for (int g = 0; g < a.group->size(); ++g) n += act_edge_class(a, g, ec) == ec;
  return n;
}

std::vector<Rational> seed_alpha(const Measure& mu, const std::vector<AnchorClasses>& anchors) {
  std::vector<Rational> alpha;
  for (const auto& an : anchors) {
    if (an.stabilizer < 1) throw PreconditionError("stabiliser order must be positive");
    for (const auto& [c, m] : mu.mass) {
      int hits = 0;
      for (const auto& k : an.classes) hits += k.contains(c);
      if (hits != 1) {
        std::string s;
        for (int x : c) s += std::to_string(x) + " ";
        throw PreconditionError("classes at vertex " + std::to_string(an.vertex) + " do not partition the space: colouring [ " +
                                s + "] lies in " + std::to_string(hits) + " classes");
      }
    }
    for (const auto& k : an.classes) {
      Rational m = 0;
      for (const auto& [c, p] : mu.mass)
        if (k.contains(c)) m += p;
      alpha.push_back(m / an.stabilizer);
    }
  }
  return alpha;
}

IntMatrix GluingSystem::matrix() const {
  IntMatrix m;
  for (const auto& r : rows) {
    std::vector<Int> row(templates.size());
    for (std::size_t i = 0; i < templates.size(); ++i) row[i] = r.plus[i] - r.minus[i];
    m.push_back(row);
  }
  return m;
}

std::vector<Int> count_m(const Ambient& a, const std::vector<Template>& templates, const EdgeClass& fc, int side) {
  const int target = a.endpoint_on(fc.edge, side);
  std::vector<Int> out(templates.size());
  for (std::size_t i = 0; i < templates.size(); ++i) {
    const auto& t = templates[i];
    for (int g = 0; g < a.group->size(); ++g) {
      if (a.group->vertex(g, t.anchor) != target) continue;
      if (fc.cls.contains(act(a.wall_perms[g], t.coloring))) out[i] += 1;
    }
  }
  return out;
}

GluingSystem build_system(const Ambient& a, const std::vector<Template>& templates, const std::vector<Coloring>& space) {
  GluingSystem sys;
  sys.templates = templates;
  std::set<EdgeClass> reps;
  for (int f : a.cx->edges()) {
    for (const auto& c : space) {
      EdgeClass k = edge_class(a, f, c);
      EdgeClass best = k;
      for (int g = 1; g < a.group->size(); ++g) best = std::min(best, act_edge_class(a, g, k));
      reps.insert(best);
    }
  }
  for (const auto& k : reps) {
    GluingRow r;
    r.key = k;
    r.plus = count_m(a, templates, k, 1);
    r.minus = count_m(a, templates, k, -1);
    r.stabilizer = stabilizer_order(a, k);
    sys.rows.push_back(std::move(r));
  }
  return sys;
}

std::vector<Int> multiply(const IntMatrix& a, const std::vector<Int>& v) {
  std::vector<Int> out;
  for (const auto& row : a) {
    if (row.size() != v.size()) throw PreconditionError("matrix and vector sizes differ");
    Int s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += row[i] * v[i];
    out.push_back(s);
  }
  return out;
}

std::vector<Rational> multiply(const IntMatrix& a, const std::vector<Rational>& v) {
  std::vector<Rational> out;
  for (const auto& row : a) {
    if (row.size() != v.size()) throw PreconditionError("matrix and vector sizes differ");
    Rational s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += Rational(row[i]) * v[i];
    out.push_back(s);
  }
  return out;
}

std::vector<int> rref(std::vector<std::vector<Rational>>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<Rational>> kernel_basis(const std::vector<std::vector<Rational>>& in) {
  if (in.empty()) return {};
  auto m = in;
  const int cols = static_cast<int>(m[0].size());
  auto pivots = rref(m);
  std::vector<char> is_pivot(cols, 0);
  for (int p : pivots) is_pivot[p] = 1;
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> b(cols, 0);
    b[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) b[pivots[i]] = -m[i][f];
    basis.push_back(b);
  }
  return basis;
}

namespace {

Int lcm_of_denominators(const std::vector<Rational>& v) {
  Int l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, denominator(x));
  return l;
}

// Visits all vectors in {1..L}^d with entry sum s, lexicographically.
template <class F>
bool for_each_composition(int d, int s, int L, std::vector<int>& cur, F&& f) {
  if (static_cast<int>(cur.size()) == d - 1) {
    if (s < 1 || s > L) return true;
    cur.push_back(s);
    bool go = f(cur);
    cur.pop_back();
    return go;
  }
  const int rest = d - 1 - static_cast<int>(cur.size());
  for (int x = 1; x <= L && s - x >= rest; ++x) {
    cur.push_back(x);
    bool go = for_each_composition(d, s - x, L, cur, f);
    cur.pop_back();
    if (!go) return false;
  }
  return true;
}

}  // namespace

KernelResult nonneg_integer_kernel(const IntMatrix& a, const std::vector<Rational>& hint, std::size_t budget) {
  const int n = static_cast<int>(hint.size());
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) throw PreconditionError("hint length differs from the column count");
  std::vector<int> support;
  for (int i = 0; i < n; ++i) {
    if (hint[i] < 0) throw PreconditionError("hint has a negative entry at " + std::to_string(i));
    if (hint[i] > 0) support.push_back(i);
  }
  if (support.empty()) throw PreconditionError("hint is zero");
  for (const auto& x : multiply(a, hint))
    if (x != 0) throw PreconditionError("hint is not in the kernel");

  KernelResult res;
  res.support = static_cast<int>(support.size());
  std::vector<std::vector<Rational>> sub;
  for (const auto& row : a) {
    std::vector<Rational> r;
    for (int i : support) r.push_back(Rational(row[i]));
    sub.push_back(r);
  }
  std::vector<Rational> x;
  if (sub.empty()) {
    x.assign(support.size(), 1);
    res.kernel_dim = res.support;
    res.strategy = "search";
  } else {
    auto basis = kernel_basis(sub);
    res.kernel_dim = static_cast<int>(basis.size());
    const int d = res.kernel_dim;
    std::size_t tried = 0;
    bool found = false;
    const int L = 16;
    // positive rescaling of each basis vector keeps the search exact and integral
    std::vector<std::vector<Int>> ib;
    for (const auto& b : basis) {
      Int l = lcm_of_denominators(b);
      std::vector<Int> v;
      for (const auto& e : b) v.push_back(numerator(Rational(e * l)));
      ib.push_back(v);
    }
    std::vector<Int> y(support.size());
    for (int s = d; s <= d * L && !found && tried < budget; ++s) {
      std::vector<int> cur;
      for_each_composition(d, s, L, cur, [&](const std::vector<int>& lam) {
        for (std::size_t i = 0; i < y.size(); ++i) {
          y[i] = 0;
          for (int j = 0; j < d; ++j) y[i] += lam[j] * ib[j][i];
          if (y[i] <= 0) return ++tried < budget;
        }
        {
          x.assign(y.begin(), y.end());
          found = true;
          return false;
        }
      });
    }
    if (found) {
      res.strategy = "search";
    } else {
      for (int i : support) x.push_back(hint[i]);
      res.strategy = "scaled-hint";
    }
  }
  Int l = lcm_of_denominators(x);
  std::vector<Int> w(n, 0);
  Int g = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    Rational v = x[i] * l;
    w[support[i]] = numerator(v);
    g = boost::multiprecision::gcd(g, numerator(v));
  }
  if (g > 1)
    for (auto& v : w) v /= g;
  for (const auto& y : multiply(a, w))
    if (y != 0) throw IntegrityError("kernel solution fails A w = 0");
  res.w = w;
  return res;
}

}  // namespace cubecx
