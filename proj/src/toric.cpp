#include "lgfrob/toric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "lgfrob/errors.hpp"
#include "lgfrob/linalg.hpp"

namespace lgfrob {

namespace {

std::string join(const std::vector<std::size_t>& xs) {
  std::string out = "{";
  for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? "," : "") + std::to_string(xs[k]);
  return out + "}";
}

std::string format_point(const std::vector<Rational>& v) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + to_string(v[k]);
  return out + ")";
}

RatMatrix cone_matrix(const FanData& fan, const std::vector<std::size_t>& cone) {
  RatMatrix a(cone.size(), fan.dim);
  for (std::size_t i = 0; i < cone.size(); ++i)
    for (std::size_t j = 0; j < fan.dim; ++j) a(i, j) = Rational(fan.rays[cone[i]][j]);
  return a;
}

Rational pairing(const std::vector<Rational>& m, const IntVector& ray) {
  Rational s = 0;
  for (std::size_t j = 0; j < ray.size(); ++j) s += m[j] * ray[j];
  return s;
}

// Solution of <m, rho_i> = -1 for i in the cone, when the cone is simplicial.
std::optional<std::vector<Rational>> cone_vertex(const FanData& fan, const std::vector<std::size_t>& cone) {
  if (cone.size() != fan.dim) return std::nullopt;
  const RatMatrix a = cone_matrix(fan, cone);
  if (determinant(a) == 0) return std::nullopt;
  const std::vector<Rational> rhs(cone.size(), Rational(-1));
  return solve_rational(a, rhs);
}

// All m-element subsets of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Integer binomial(std::size_t n, std::size_t k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace

IntMatrix FanData::ray_matrix() const {
  IntMatrix p(rays.size(), dim);
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) p(i, j) = Integer(static_cast<long>(rays[i][j]));
  return p;
}

void FanData::normalize() {
  if (dim == 0) throw InvalidInput("fan dimension must be positive");
  if (rays.empty()) throw InvalidInput("fan has no rays");
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (rays[i].size() != dim)
      throw InvalidInput("ray " + std::to_string(i) + " has " + std::to_string(rays[i].size()) +
                         " coordinates, expected " + std::to_string(dim));
  if (max_cones.empty()) throw InvalidInput("fan has no maximal cones");
  for (std::size_t c = 0; c < max_cones.size(); ++c) {
    auto& cone = max_cones[c];
    std::sort(cone.begin(), cone.end());
    if (std::adjacent_find(cone.begin(), cone.end()) != cone.end())
      throw InvalidInput("cone " + std::to_string(c) + " repeats a ray");
    for (auto i : cone)
      if (i >= rays.size()) throw InvalidInput("cone " + std::to_string(c) + " references missing ray " + std::to_string(i));
  }
}

ValidationReport validate_fan(const FanData& input) {
  FanData fan = input;
  fan.normalize();
  ValidationReport rep;
  const std::size_t m = fan.dim;
  const std::size_t r = fan.ray_count();

  for (std::size_t i = 0; i < r; ++i) {
    Integer g = 0;
    for (auto x : fan.rays[i]) g = gcd(g, Integer(static_cast<long>(x)));
    if (g != 1) rep.primitive.fail("ray " + std::to_string(i) + " has content " + g.get_str());
  }

  rep.cone_vertices.resize(fan.max_cones.size());
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto& cone = fan.max_cones[c];
    if (cone.size() != m) {
      rep.simplicial.fail("cone " + std::to_string(c) + " has " + std::to_string(cone.size()) + " rays, expected " +
                          std::to_string(m));
      continue;
    }
    auto vertex = cone_vertex(fan, cone);
    if (!vertex) {
      rep.simplicial.fail("cone " + std::to_string(c) + " " + join(cone) + " has linearly dependent rays");
      continue;
    }
    rep.cone_vertices[c] = std::move(*vertex);
  }
  if (std::set<std::vector<std::size_t>>(fan.max_cones.begin(), fan.max_cones.end()).size() != fan.max_cones.size())
    rep.simplicial.fail("duplicate maximal cone");

  // Ridge pairing and connectivity of the adjacency graph.
  if (r < m + 1) rep.complete.fail("only " + std::to_string(r) + " rays in dimension " + std::to_string(m));
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> ridges;
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto& cone = fan.max_cones[c];
    if (cone.size() != m) continue;
    for (std::size_t drop = 0; drop < cone.size(); ++drop) {
      std::vector<std::size_t> ridge;
      for (std::size_t k = 0; k < cone.size(); ++k)
        if (k != drop) ridge.push_back(cone[k]);
      ridges[ridge].push_back(c);
    }
  }
  std::vector<std::size_t> parent(fan.max_cones.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [ridge, cones] : ridges) {
    if (cones.size() != 2) {
      rep.complete.fail("ridge " + join(ridge) + " lies in " + std::to_string(cones.size()) + " maximal cone(s)");
      continue;
    }
    parent[find(cones[0])] = find(cones[1]);
  }
  for (std::size_t c = 1; c < fan.max_cones.size(); ++c)
    if (find(c) != find(0)) {
      rep.complete.fail("cone " + std::to_string(c) + " is not connected to cone 0 through ridges");
      break;
    }

  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto& v = rep.cone_vertices[c];
    if (v.empty()) {
      rep.gorenstein.fail("cone " + std::to_string(c) + " is not simplicial");
      rep.ample.fail("cone " + std::to_string(c) + " is not simplicial");
      continue;
    }
    if (!std::all_of(v.begin(), v.end(), [](const Rational& q) { return is_integral(q); }))
      rep.gorenstein.fail("cone " + std::to_string(c) + " has m_sigma = " + format_point(v));
    const auto& cone = fan.max_cones[c];
    for (std::size_t j = 0; j < r; ++j) {
      if (std::binary_search(cone.begin(), cone.end(), j)) continue;
      const Rational value = pairing(v, fan.rays[j]);
      if (value <= -1)
        rep.ample.fail("cone " + std::to_string(c) + " has m_sigma = " + format_point(v) + " and <m_sigma, rho_" +
                       std::to_string(j) + "> = " + to_string(value));
    }
  }

  const SmithForm s = smith_normal_form(fan.ray_matrix());
  const auto factors = s.invariant_factors();
  if (factors.size() != m) {
    rep.torsion_free.fail("rays span a sublattice of rank " + std::to_string(factors.size()));
  } else {
    for (const auto& d : factors)
      if (d != 1) {
        rep.torsion_free.fail("class group has torsion Z/" + d.get_str());
        break;
      }
  }
  return rep;
}

GradingMap class_group(const FanData& input) {
  FanData fan = input;
  fan.normalize();
  const std::size_t m = fan.dim;
  const std::size_t r = fan.ray_count();
  const SmithForm s = smith_normal_form(fan.ray_matrix());
  const auto factors = s.invariant_factors();
  if (factors.size() != m) throw InvalidInput("rays do not span Z^" + std::to_string(m));
  for (const auto& d : factors)
    if (d != 1) throw TorsionClassGroup("class group has torsion Z/" + d.get_str());

  IntMatrix k(r - m, r);
  for (std::size_t i = 0; i < r - m; ++i)
    for (std::size_t j = 0; j < r; ++j) k(i, j) = s.U(m + i, j);
  const IntMatrix h = hermite_normal_form(k).H;

  GradingMap g;
  g.rank = r - m;
  g.degrees.assign(r, ClassElement(r - m, 0));
  g.beta.assign(r - m, 0);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < r - m; ++i) {
      g.degrees[j][i] = to_int64(h(i, j));
      g.beta[i] += g.degrees[j][i];
    }
  return g;
}

AnticanPolytope anticanonical_polytope(const FanData& input) {
  FanData fan = input;
  fan.normalize();
  AnticanPolytope poly;
  poly.dim = fan.dim;
  poly.normals = fan.rays;
  poly.cones = fan.max_cones;
  std::vector<IntVector> per_cone;
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto v = cone_vertex(fan, fan.max_cones[c]);
    if (!v) throw NotReflexivePipeline("cone " + std::to_string(c) + " is not simplicial");
    IntVector iv;
    for (const auto& q : *v) {
      if (!is_integral(q)) throw NotReflexivePipeline("m_sigma of cone " + std::to_string(c) + " is fractional");
      iv.push_back(to_int64(q.get_num()));
    }
    for (std::size_t j = 0; j < fan.ray_count(); ++j) {
      const Rational value = pairing(*v, fan.rays[j]);
      if (value < -1)
        throw NotReflexivePipeline("m_sigma of cone " + std::to_string(c) + " violates <m, rho_" + std::to_string(j) +
                                   "> >= -1");
    }
    per_cone.push_back(std::move(iv));
  }
  poly.vertices = per_cone;
  std::sort(poly.vertices.begin(), poly.vertices.end());
  poly.vertices.erase(std::unique(poly.vertices.begin(), poly.vertices.end()), poly.vertices.end());
  for (const auto& v : per_cone)
    poly.vertex_of_cone.push_back(static_cast<std::size_t>(
        std::lower_bound(poly.vertices.begin(), poly.vertices.end(), v) - poly.vertices.begin()));
  return poly;
}

namespace {

// Pulling triangulation of the face dual to cone tau: cone from its least
// vertex over the facets not containing that vertex.
class FaceTriangulator {
 public:
  explicit FaceTriangulator(const AnticanPolytope& p) : p_(p) {}

  const std::vector<std::vector<std::size_t>>& simplices(const std::vector<std::size_t>& tau) {
    if (auto it = memo_.find(tau); it != memo_.end()) return it->second;
    std::vector<std::vector<std::size_t>> out;
    std::set<std::size_t> face_vertices;
    std::set<std::size_t> next_rays;
    for (std::size_t c = 0; c < p_.cones.size(); ++c) {
      const auto& cone = p_.cones[c];
      if (!std::includes(cone.begin(), cone.end(), tau.begin(), tau.end())) continue;
      face_vertices.insert(p_.vertex_of_cone[c]);
      for (auto j : cone)
        if (!std::binary_search(tau.begin(), tau.end(), j)) next_rays.insert(j);
    }
    if (tau.size() == p_.dim) {
      out.push_back({*face_vertices.begin()});
    } else if (!face_vertices.empty()) {
      const std::size_t apex = *face_vertices.begin();
      for (auto j : next_rays) {
        std::vector<std::size_t> sub = tau;
        sub.insert(std::upper_bound(sub.begin(), sub.end(), j), j);
        if (contains_vertex(sub, apex)) continue;
        for (const auto& s : simplices(sub)) {
          std::vector<std::size_t> simplex{apex};
          simplex.insert(simplex.end(), s.begin(), s.end());
          out.push_back(std::move(simplex));
        }
      }
    }
    return memo_.emplace(tau, std::move(out)).first->second;
  }

 private:
  bool contains_vertex(const std::vector<std::size_t>& tau, std::size_t vertex) const {
    for (std::size_t c = 0; c < p_.cones.size(); ++c) {
      if (p_.vertex_of_cone[c] != vertex) continue;
      if (std::includes(p_.cones[c].begin(), p_.cones[c].end(), tau.begin(), tau.end())) return true;
    }
    return false;
  }

  const AnticanPolytope& p_;
  std::map<std::vector<std::size_t>, std::vector<std::vector<std::size_t>>> memo_;
};

}  // namespace

Integer normalized_volume(const AnticanPolytope& polytope) {
  FaceTriangulator tri(polytope);
  std::set<std::size_t> used_rays;
  for (const auto& cone : polytope.cones) used_rays.insert(cone.begin(), cone.end());
  Integer total = 0;
  for (auto i : used_rays) {
    for (const auto& simplex : tri.simplices({i})) {
      IntMatrix a(polytope.dim, polytope.dim);
      for (std::size_t row = 0; row < simplex.size(); ++row)
        for (std::size_t col = 0; col < polytope.dim; ++col)
          a(row, col) = Integer(static_cast<long>(polytope.vertices[simplex[row]][col]));
      total += abs(determinant(a));
    }
  }
  if (total == 0) throw DegeneratePolytope("anticanonical polytope has zero volume");
  return total;
}

std::vector<Integer> betti_numbers(const FanData& input) {
  FanData fan = input;
  fan.normalize();
  const std::size_t m = fan.dim;
  std::set<std::vector<std::size_t>> cones;
  for (const auto& cone : fan.max_cones) {
    const std::size_t n = cone.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<std::size_t> face;
      for (std::size_t k = 0; k < n; ++k)
        if (mask & (std::size_t{1} << k)) face.push_back(cone[k]);
      cones.insert(std::move(face));
    }
  }
  std::vector<Integer> count(m + 1);
  for (const auto& c : cones) count[c.size()] += 1;
  // sum_sigma (t - 1)^{m - dim sigma}
  std::vector<Integer> betti(2 * m + 1);
  for (std::size_t d = 0; d <= m; ++d) {
    const std::size_t e = m - d;
    for (std::size_t k = 0; k <= e; ++k) {
      Integer term = count[d] * binomial(e, k);
      if ((e - k) % 2) term = -term;
      betti[2 * k] += term;
    }
  }
  return betti;
}

ExtraIsomResult extraisom_necessary_check(const FanData& fan) {
  ExtraIsomResult out;
  const std::size_t m = fan.dim;
  const auto betti = betti_numbers(fan);
  out.b_middle = betti[m];
  out.b_below = m >= 2 ? betti[m - 2] : Integer(0);
  if (m % 2 == 1) {
    out.status = ExtraIsomStatus::TriviallyHolds;
  } else {
    out.status = out.b_below == out.b_middle ? ExtraIsomStatus::NecessaryConditionOK
                                             : ExtraIsomStatus::NecessaryConditionFails;
  }
  return out;
}

std::string to_string(ExtraIsomStatus s) {
  switch (s) {
    case ExtraIsomStatus::TriviallyHolds: return "TriviallyHolds";
    case ExtraIsomStatus::NecessaryConditionOK: return "NecessaryConditionOK";
    case ExtraIsomStatus::NecessaryConditionFails: return "NecessaryConditionFails";
  }
  return "?";
}

std::vector<Monomial> monomial_basis(const GradingMap& g, const FanData& fan, const ClassElement& alpha) {
  const std::size_t r = fan.ray_count();
  const std::size_t m = fan.dim;
  if (alpha.size() != g.rank) throw DegreeMismatch("class element has wrong rank");

  IntMatrix k(g.rank, r);
  for (std::size_t i = 0; i < g.rank; ++i)
    for (std::size_t j = 0; j < r; ++j) k(i, j) = Integer(static_cast<long>(g.degrees[j][i]));
  std::vector<Integer> target;
  for (auto x : alpha) target.emplace_back(static_cast<long>(x));
  const auto particular = solve_integer(k, target);
  if (!particular) return {};
  IntVector u0;
  for (const auto& x : *particular) u0.push_back(to_int64(x));

  // Bounding box from the vertices of {m' : <m', rho_i> >= -u0_i}.
  std::vector<Rational> lo(m), hi(m);
  bool feasible = false;
  for_each_subset(r, m, [&](const std::vector<std::size_t>& subset) {
    RatMatrix a(m, m);
    std::vector<Rational> rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) a(i, j) = Rational(fan.rays[subset[i]][j]);
      rhs[i] = Rational(-u0[subset[i]]);
    }
    if (determinant(a) == 0) return;
    const auto x = solve_rational(a, rhs);
    for (std::size_t i = 0; i < r; ++i)
      if (pairing(*x, fan.rays[i]) < -u0[i]) return;
    for (std::size_t j = 0; j < m; ++j) {
      if (!feasible || (*x)[j] < lo[j]) lo[j] = (*x)[j];
      if (!feasible || (*x)[j] > hi[j]) hi[j] = (*x)[j];
    }
    feasible = true;
  });
  if (!feasible) return {};

  IntVector lower(m), upper(m);
  for (std::size_t j = 0; j < m; ++j) {
    Integer f, c;
    mpz_fdiv_q(f.get_mpz_t(), lo[j].get_num_mpz_t(), lo[j].get_den_mpz_t());
    mpz_cdiv_q(c.get_mpz_t(), hi[j].get_num_mpz_t(), hi[j].get_den_mpz_t());
    lower[j] = to_int64(f);
    upper[j] = to_int64(c);
  }
  // A ray's inequality can be tested once its last nonzero coordinate is set.
  std::vector<std::vector<std::size_t>> settled(m);
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t last = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (fan.rays[i][j] != 0) last = j;
    settled[last].push_back(i);
  }

  std::vector<Monomial> out;
  IntVector u = u0;
  IntVector point(m);
  auto sweep = [&](auto&& self, std::size_t depth) -> void {
    if (depth == m) {
      std::vector<std::int32_t> exps(r);
      for (std::size_t i = 0; i < r; ++i) exps[i] = static_cast<std::int32_t>(u[i]);
      out.emplace_back(std::move(exps));
      return;
    }
    for (std::int64_t t = lower[depth]; t <= upper[depth]; ++t) {
      point[depth] = t;
      for (std::size_t i = 0; i < r; ++i) u[i] += t * fan.rays[i][depth];
      bool ok = true;
      for (auto i : settled[depth])
        if (u[i] < 0) {
          ok = false;
          break;
        }
      if (ok) self(self, depth + 1);
      for (std::size_t i = 0; i < r; ++i) u[i] -= t * fan.rays[i][depth];
    }
  };
  sweep(sweep, 0);
  std::sort(out.begin(), out.end(), MonomialOrder{});
  return out;
}

std::optional<IntMatrix> unimodular_transform(const std::vector<ClassElement>& from,
                                              const std::vector<ClassElement>& to) {
  if (from.size() != to.size() || from.empty()) return std::nullopt;
  const std::size_t k = from.front().size();
  if (to.front().size() != k) return std::nullopt;
  const std::size_t n = from.size();
  // from^T (n x k) * G^T = to^T
  RatMatrix ft(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) ft(i, j) = Rational(from[i][j]);
  IntMatrix g(k, k);
  for (std::size_t row = 0; row < k; ++row) {
    std::vector<Rational> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = Rational(to[i][row]);
    const auto x = solve_rational(ft, rhs);
    if (!x) return std::nullopt;
    for (std::size_t j = 0; j < k; ++j) {
      if (!is_integral((*x)[j])) return std::nullopt;
      g(row, j) = (*x)[j].get_num();
    }
  }
  const Integer det = determinant(g);
  if (det != 1 && det != -1) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t row = 0; row < k; ++row) {
      Integer s = 0;
      for (std::size_t j = 0; j < k; ++j) s += g(row, j) * from[i][j];
      if (s != to[i][row]) return std::nullopt;
    }
  return g;
}

bool is_standard_projective_fan(const FanData& fan, const GradingMap& g) {
  if (fan.ray_count() != fan.dim + 1 || g.rank != 1) return false;
  if (fan.max_cones.size() != fan.ray_count()) return false;
  return std::all_of(g.degrees.begin(), g.degrees.end(), [](const ClassElement& d) { return d[0] == 1; });
}

}  // namespace lgfrob
