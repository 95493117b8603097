#include "lgfrob/fixtures.hpp"

#include <charconv>
#include <stdexcept>

#include "lgfrob/errors.hpp"

namespace lgfrob {

namespace {

IntVector unit(std::size_t dim, std::size_t i, std::int64_t s = 1) {
  IntVector v(dim, 0);
  v[i] = s;
  return v;
}

// The declared degree columns must annihilate the ray matrix: for every
// coordinate k of Cl, sum_i deg(z_i)_k rho_i = 0.
void verify_degree_relations(const Fixture& fx) {
  const std::size_t rank = fx.expected_degrees.front().size();
  for (std::size_t k = 0; k < rank; ++k) {
    IntVector sum(fx.fan.dim, 0);
    for (std::size_t i = 0; i < fx.fan.rays.size(); ++i)
      for (std::size_t j = 0; j < fx.fan.dim; ++j) sum[j] += fx.expected_degrees[i][k] * fx.fan.rays[i][j];
    for (auto x : sum)
      if (x != 0) throw std::logic_error("fixture " + fx.name + ": degree column " + std::to_string(k) +
                                         " does not annihilate the rays");
  }
}

// Projective bundle P(O + O(a_1) + ... ) style fans over P^n with two fibre
// rays +-e_{n+1}: cones drop one base ray and pick one fibre ray.
std::vector<std::vector<std::size_t>> bundle_cones(std::size_t base_rays) {
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t drop = 0; drop < base_rays; ++drop) {
    for (std::size_t fibre = 0; fibre < 2; ++fibre) {
      std::vector<std::size_t> c;
      for (std::size_t i = 0; i < base_rays; ++i)
        if (i != drop) c.push_back(i);
      c.push_back(base_rays + fibre);
      cones.push_back(std::move(c));
    }
  }
  return cones;
}

// Drawn by tools/gen_bundle_coefficients.py with seed 1 (every monomial gets a
// nonzero coefficient, so u and v stay squarefree on the coordinate lines).
// Committed so that every derived number is reproducible.
constexpr const char* kBundleP2Quadric = "-x0^2 - 2*x0*x1 - 2*x0*x2 + 3/2*x1^2 + 2*x1*x2 - 2*x2^2";
constexpr const char* kBundleP2Quartic =
    "-5/2*x0^4 + 2/3*x0^3*x1 - 5/3*x0^3*x2 + 3/2*x0^2*x1^2 - 2/3*x0^2*x1*x2 - 2*x0^2*x2^2 - 5*x0*x1^3"
    " - 5/3*x0*x1^2*x2 + 4*x0*x1*x2^2 + 2/3*x0*x2^3 - x1^4 - 5/3*x1^3*x2 - x1^2*x2^2 + x1*x2^3 - x2^4";

std::string power_sum(const std::vector<std::string>& names, std::size_t count, int e) {
  std::string s;
  for (std::size_t i = 0; i < count; ++i) s += (i ? " + " : "") + names[i] + "^" + std::to_string(e);
  return s;
}

}  // namespace

Fixture fixture_projective(int r) {
  if (r < 3) throw InvalidInput("projective fixtures need r >= 3, got " + std::to_string(r));
  const std::size_t n = static_cast<std::size_t>(r);
  Fixture fx;
  fx.name = "projective-" + std::to_string(r);
  fx.description = "P^" + std::to_string(r - 1) + " with the Fermat hypersurface of degree " + std::to_string(r);
  fx.fan.dim = n - 1;
  for (std::size_t i = 0; i + 1 < n; ++i) fx.fan.rays.push_back(unit(n - 1, i));
  fx.fan.rays.push_back(IntVector(n - 1, -1));
  for (std::size_t drop = 0; drop < n; ++drop) {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < n; ++i)
      if (i != drop) c.push_back(i);
    fx.fan.max_cones.push_back(std::move(c));
  }
  if (n == 3) fx.variables = {"x", "y", "z"};
  else
    for (std::size_t i = 0; i < n; ++i) fx.variables.push_back("x" + std::to_string(i));
  fx.polynomial = power_sum(fx.variables, n, r);
  fx.expected_degrees.assign(n, ClassElement{1});
  fx.expected_beta = {static_cast<std::int64_t>(r)};
  if (r == 3) fx.expected_dims = std::vector<std::size_t>{1, 1};
  if (r == 4) fx.expected_dims = std::vector<std::size_t>{1, 19, 1};
  if (r == 5) fx.expected_dims = std::vector<std::size_t>{1, 101, 101, 1};
  verify_degree_relations(fx);
  return fx;
}

Fixture fixture_product_p1p1() {
  Fixture fx;
  fx.name = "p1xp1";
  fx.description = "P^1 x P^1 with a bidegree (2,2) curve";
  fx.fan.dim = 2;
  fx.fan.rays = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  fx.fan.max_cones = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  fx.variables = {"x0", "x1", "y0", "y1"};
  fx.polynomial = "x0^2*y0^2 + x1^2*y1^2 + x0*x1*y0*y1";
  fx.expected_degrees = {{1, 0}, {1, 0}, {0, 1}, {0, 1}};
  fx.expected_beta = {2, 2};
  verify_degree_relations(fx);
  return fx;
}

// Over P^2 with base rays e1, e2, -e1-e2-e3 and fibre rays +-e3. The base
// rays sum to -e3, so the columns (1,1,1,0,-1) and (0,0,0,1,1) kill the
// ray matrix: deg x_i = (1,0), deg y1 = (0,1), deg y2 = (-1,1).
Fixture fixture_bundle_p2() {
  Fixture fx;
  fx.name = "bundle-p2";
  fx.description = "P(O + O(1)) over P^2 with f = y1^2 u(x) + y2^2 v(x), u quadric, v quartic";
  fx.fan.dim = 3;
  fx.fan.rays = {{1, 0, 0}, {0, 1, 0}, {-1, -1, -1}, {0, 0, 1}, {0, 0, -1}};
  fx.fan.max_cones = bundle_cones(3);
  fx.variables = {"x0", "x1", "x2", "y1", "y2"};
  fx.polynomial = "y1^2*(" + std::string(kBundleP2Quadric) + ") + y2^2*(" + kBundleP2Quartic + ")";
  fx.expected_degrees = {{1, 0}, {1, 0}, {1, 0}, {0, 1}, {-1, 1}};
  fx.expected_beta = {2, 2};
  fx.zero_sets = {{3, 4}, {0, 1, 2}};
  fx.asserted_hypotheses = {"u and v define a smooth complete intersection in P^2",
                            "f is non-degenerate"};
  verify_degree_relations(fx);
  return fx;
}

// Over P^6 with base rays e1..e6, -e1-...-e6-e7 and fibre rays +-e7. The
// base rays sum to -e7, so sum rho_x - 2 rho_y1 - 3 rho_y2 = -e7 - 2e7 + 3e7
// = 0 and rho_y1 + rho_y2 = 0: deg x_i = (1,0), deg y1 = (-2,1),
// deg y2 = (-3,1), beta = (7 - 5, 2) = (2,2).
Fixture fixture_bundle_p6() {
  Fixture fx;
  fx.name = "bundle-p6";
  fx.description = "P(O(2) + O(3)) over P^6 with f = y1^2 u(x) + y2^2 v(x), u = sum x_i^6, v = sum x_i^8";
  fx.fan.dim = 7;
  for (std::size_t i = 0; i < 6; ++i) fx.fan.rays.push_back(unit(7, i));
  fx.fan.rays.push_back(IntVector(7, -1));
  fx.fan.rays.push_back(unit(7, 6));
  fx.fan.rays.push_back(unit(7, 6, -1));
  fx.fan.max_cones = bundle_cones(7);
  for (std::size_t i = 0; i < 7; ++i) fx.variables.push_back("x" + std::to_string(i));
  fx.variables.push_back("y1");
  fx.variables.push_back("y2");
  fx.polynomial = "y1^2*(" + power_sum(fx.variables, 7, 6) + ") + y2^2*(" + power_sum(fx.variables, 7, 8) + ")";
  fx.expected_degrees.assign(7, ClassElement{1, 0});
  fx.expected_degrees.push_back({-2, 1});
  fx.expected_degrees.push_back({-3, 1});
  fx.expected_beta = {2, 2};
  fx.zero_sets = {{7, 8}, {0, 1, 2, 3, 4, 5, 6}};
  fx.max_degree_a = 1;
  fx.asserted_hypotheses = {"X_{u,v} in P^6 is a smooth projective complete intersection",
                            "f is non-degenerate"};
  verify_degree_relations(fx);
  return fx;
}

// Rays ordered so that x, y, z carry weights 1, 1, 2.
Fixture fixture_weighted_p112() {
  Fixture fx;
  fx.name = "weighted-p112";
  fx.description = "weighted projective plane P(1,1,2) with f = x^4 + y^4 + z^2";
  fx.fan.dim = 2;
  fx.fan.rays = {{1, 0}, {-1, -2}, {0, 1}};
  fx.fan.max_cones = {{0, 1}, {1, 2}, {0, 2}};
  fx.variables = {"x", "y", "z"};
  fx.polynomial = "x^4 + y^4 + z^2";
  fx.expected_degrees = {{1}, {1}, {2}};
  fx.expected_beta = {4};
  fx.expected_dims = std::vector<std::size_t>{1, 1};
  verify_degree_relations(fx);
  return fx;
}

Fixture fixture_hirzebruch3() {
  Fixture fx;
  fx.name = "hirzebruch3";
  fx.description = "Hirzebruch surface F_3 (not Fano)";
  fx.fan.dim = 2;
  fx.fan.rays = {{1, 0}, {0, 1}, {-1, 3}, {0, -1}};
  fx.fan.max_cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  fx.variables = {"z1", "z2", "z3", "z4"};
  fx.polynomial = "z1*z2*z3*z4";
  fx.expected_degrees = {{1, 0}, {-3, 1}, {1, 0}, {0, 1}};
  fx.expected_beta = {-1, 2};
  fx.expected_failure = "ample";
  verify_degree_relations(fx);
  return fx;
}

Fixture fixture_degenerate_cubic() {
  Fixture fx = fixture_projective(3);
  fx.name = "degenerate-cubic";
  fx.description = "P^2 with the non-reduced cubic x^3";
  fx.polynomial = "x^3";
  fx.expected_dims.reset();
  fx.expected_failure = "socle";
  return fx;
}

std::vector<std::string> fixture_names() {
  return {"projective-3", "projective-4", "projective-5", "p1xp1",       "bundle-p2",
          "bundle-p6",    "weighted-p112", "hirzebruch3", "degenerate-cubic"};
}

Fixture make_fixture(const std::string& name) {
  constexpr std::string_view prefix = "projective-";
  if (name.starts_with(prefix)) {
    int r = 0;
    const char* first = name.data() + prefix.size();
    const char* last = name.data() + name.size();
    auto [p, ec] = std::from_chars(first, last, r);
    if (ec == std::errc() && p == last && first != last) return fixture_projective(r);
  }
  if (name == "p1xp1") return fixture_product_p1p1();
  if (name == "bundle-p2") return fixture_bundle_p2();
  if (name == "bundle-p6") return fixture_bundle_p6();
  if (name == "weighted-p112") return fixture_weighted_p112();
  if (name == "hirzebruch3") return fixture_hirzebruch3();
  if (name == "degenerate-cubic") return fixture_degenerate_cubic();
  throw InvalidInput("unknown fixture '" + name + "'");
}

}  // namespace lgfrob
