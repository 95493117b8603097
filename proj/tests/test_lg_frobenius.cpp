#include <doctest.h>

#include <random>

#include "lgfrob/errors.hpp"
#include "lgfrob/fixtures.hpp"
#include "lgfrob/frobenius.hpp"
#include "lgfrob/parser.hpp"
#include "lgfrob/toric.hpp"

using namespace lgfrob;

namespace {

JacobianSystem system_of(const Fixture& fx, const std::string& poly) {
  FanData fan = fx.fan;
  fan.normalize();
  return JacobianSystem(parse_polynomial(poly, fx.variables), fan, class_group(fan), fx.variables);
}

JacobianSystem system_of(const std::string& name) {
  Fixture fx = make_fixture(name);
  return system_of(fx, fx.polynomial);
}

Element basis_element(const FrobeniusAlgebraData& d, std::size_t a, std::size_t i) {
  Element e{a, std::vector<Rational>(d.dim(a), 0)};
  e.coords[i] = 1;
  return e;
}

Element random_element(std::mt19937_64& rng, const FrobeniusAlgebraData& d, std::size_t a) {
  Element e{a, std::vector<Rational>(d.dim(a), 0)};
  for (int k = 0; k < 3; ++k) e.coords[rng() % e.coords.size()] += Rational(static_cast<long>(rng() % 7) - 3);
  return e;
}

Element scale(const Element& e, const Rational& c) {
  Element out = e;
  for (auto& x : out.coords) x *= c;
  return out;
}

}  // namespace

TEST_CASE("sign and unit conventions") {
  FrobeniusAlgebraData d;
  d.m = 2;
  CHECK(d.trace_sign() == 1);
  d.m = 3;
  CHECK(d.trace_sign() == 1);
  d.m = 4;
  CHECK(d.trace_sign() == -1);
  d.m = 5;
  CHECK(d.trace_sign() == -1);
  CHECK(d.unit_exponent() == 4);
  CHECK(TraceScalar{9, 1} == TraceScalar{9, 3});
  CHECK(TraceScalar{9, 1}.to_string() == "9 * (2*pi*i)^1");
}

TEST_CASE("strategy names") {
  CHECK(parse_trace_strategy("generic") == TraceStrategy::Generic);
  CHECK(parse_trace_strategy("projective-hessian") == TraceStrategy::ProjectiveHessian);
  CHECK(parse_trace_strategy("hessian") == TraceStrategy::ProjectiveHessian);
  CHECK(to_string(TraceStrategy::ProjectiveHessian) == "projective-hessian");
  CHECK_THROWS_AS(parse_trace_strategy("other"), InvalidInput);
}

TEST_CASE("Fermat cubic algebra and trace") {
  auto d = build_algebra(system_of("projective-3"), TraceStrategy::Generic);
  CHECK(d.m == 2);
  CHECK(d.dim(0) == 1);
  CHECK(d.dim(1) == 1);
  CHECK(d.socle_generator == Monomial({1, 1, 1}));
  CHECK(d.euler_basis_monomial == Monomial({2, 2, 2}));
  CHECK(d.normalized_volume == 9);

  TraceScalar t = trace({1}, d);
  CHECK(t.value == 9);
  CHECK(t.unit_exponent == 1);
  CHECK(trace({0}, d).value == 0);
  CHECK(trace({Rational(-2, 3)}, d).value == -6);
  CHECK_THROWS_AS(trace({1, 0}, d), DegreeMismatch);

  // [xyz]^2 lives in degree 2 beta, where R vanishes
  auto xyz = basis_element(d, 1, 0);
  Element sq = d.multiply(xyz, xyz);
  CHECK(sq.degree == 2);
  CHECK(sq.coords.empty());

  GramMatrix g0 = pairing_gram(d, 0);
  CHECK(g0.values == RatMatrix{{9}});
  CHECK(g0.unit_exponent == 1);
}

TEST_CASE("quintic trace and Gram matrices") {
  auto d = build_algebra(system_of("projective-5"), TraceStrategy::Generic);
  CHECK(hodge_row(d) == std::vector<std::size_t>{1, 101, 101, 1});
  CHECK(d.normalized_volume == 625);
  CHECK(trace({1}, d).value == -625);

  GramMatrix g0 = pairing_gram(d, 0);
  REQUIRE(g0.values.rows() == 1);
  CHECK(g0.values(0, 0) != 0);

  for (std::size_t a = 0; a < d.m; ++a) {
    GramMatrix ga = pairing_gram(d, a), gb = pairing_gram(d, d.m - 1 - a);
    CHECK(ga.values.rows() == gb.values.cols());
    for (std::size_t i = 0; i < ga.values.rows(); ++i)
      for (std::size_t j = 0; j < ga.values.cols(); ++j) CHECK(ga.values(i, j) == gb.values(j, i));
    CHECK(rank(ga.values) == d.dim(a));
  }
}

TEST_CASE("structure constants agree with direct reduction on seeded triples") {
  auto d = build_algebra(system_of("projective-5"), TraceStrategy::Generic);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 50; ++t) {
    const std::size_t i = rng() % d.dim(1), j = rng() % d.dim(1), k = rng() % d.dim(2);
    Element u = basis_element(d, 1, i), v = basis_element(d, 1, j);
    Element direct = d.multiply_direct(u, v);
    CHECK(d.multiply(u, v) == direct);
    const SparseRow& row = d.tensors.at({1, 1}).at(i, j);
    Rational c = 0;
    for (const auto& [col, val] : row)
      if (col == k) c = val;
    CHECK(c == direct.coords[k]);
  }
}

TEST_CASE("unit and commutativity of the product") {
  std::mt19937_64 rng(42);
  for (const std::string name : {"projective-4", "bundle-p2"}) {
    auto d = build_algebra(system_of(name), TraceStrategy::Generic);
    Element one = basis_element(d, 0, 0);
    for (int t = 0; t < 20; ++t) {
      const std::size_t a = rng() % d.m, b = rng() % d.m;
      Element u = random_element(rng, d, a), v = random_element(rng, d, b);
      CHECK(d.multiply(one, u) == u);
      CHECK(d.multiply(u, v) == d.multiply(v, u));
      CHECK(d.multiply(u, v) == d.multiply_direct(u, v));
    }
  }
}

TEST_CASE("twisted multiplication") {
  auto d = build_algebra(system_of("projective-3"), TraceStrategy::Generic);
  Element one = basis_element(d, 0, 0), xyz = basis_element(d, 1, 0);
  CHECK(mul_twisted(one, xyz, d) == Element{1, {-1}});
  CHECK(mul_twisted(xyz, one, d) == Element{1, {1}});
  CHECK_THROWS_AS(mul_twisted(xyz, xyz, d), DegreeMismatch);
  CHECK_THROWS_AS(mul_twisted(one, one, d), DegreeMismatch);

  // mul(u, v) = (-1)^{m-1} mul(v, u) when a + b = m - 1
  std::mt19937_64 rng(43);
  for (const std::string name : {"projective-4", "projective-5", "bundle-p2"}) {
    auto q = build_algebra(system_of(name), TraceStrategy::Generic);
    const int sign = (q.m - 1) % 2 == 0 ? 1 : -1;
    for (int t = 0; t < 20; ++t) {
      const std::size_t a = rng() % q.m, b = q.m - 1 - a;
      Element u = random_element(rng, q, a), v = random_element(rng, q, b);
      CHECK(mul_twisted(u, v, q) == scale(mul_twisted(v, u, q), sign));
    }
  }
}

TEST_CASE("the Hessian strategy is proportional to the generic one") {
  for (const std::string name : {"projective-3", "projective-4", "projective-5"}) {
    CAPTURE(name);
    JacobianSystem sys = system_of(name);
    auto gen = build_algebra(sys, TraceStrategy::Generic);
    auto hes = build_algebra(sys, TraceStrategy::ProjectiveHessian);
    const Rational ratio = trace({1}, hes).value / trace({1}, gen).value;
    CHECK(ratio != 0);
    for (std::size_t a = 0; a < gen.m; ++a) {
      GramMatrix g = pairing_gram(gen, a), h = pairing_gram(hes, a);
      for (std::size_t i = 0; i < g.values.rows(); ++i)
        for (std::size_t j = 0; j < g.values.cols(); ++j) CHECK(h.values(i, j) == ratio * g.values(i, j));
    }
  }
  auto cubic = system_of("projective-3");
  CHECK(trace({1}, build_algebra(cubic, TraceStrategy::ProjectiveHessian)).value == Rational(1, 24));
}

TEST_CASE("Hessian determinant") {
  const std::vector<std::string> xyz{"x", "y", "z"};
  CHECK(hessian_determinant(parse_polynomial("x^3 + y^3 + z^3", xyz)) == parse_polynomial("216*x*y*z", xyz));
  CHECK(hessian_determinant(parse_polynomial("x*y*z", xyz)) == parse_polynomial("2*x*y*z", xyz));
  CHECK(hessian_determinant(parse_polynomial("x^3", xyz)).is_zero());
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS(build_algebra(system_of("degenerate-cubic"), TraceStrategy::Generic), SocleNotOneDimensional);
  CHECK_THROWS_AS(build_algebra(system_of("weighted-p112"), TraceStrategy::ProjectiveHessian),
                  StrategyNotAdmissible);
  CHECK_THROWS_AS(build_algebra(system_of("bundle-p2"), TraceStrategy::ProjectiveHessian), StrategyNotAdmissible);
  // x^3 + y^3 is singular at (0:0:1); the socle check fails before the Hessian is formed
  Fixture fx = make_fixture("projective-3");
  CHECK_THROWS_AS(build_algebra(system_of(fx, "x^3 + y^3"), TraceStrategy::ProjectiveHessian),
                  SocleNotOneDimensional);
}

TEST_CASE("axiom check passes on the consistent fixtures") {
  for (const std::string name : {"projective-3", "projective-4", "projective-5", "weighted-p112", "bundle-p2"}) {
    CAPTURE(name);
    auto d = build_algebra(system_of(name), TraceStrategy::Generic);
    AxiomReport r = frobenius_axiom_check(d, 7, 60);
    CHECK(r.all_pass());
    CHECK(r.unit.checked > 0);
    CHECK(r.associativity.checked > 0);
    CHECK(r.vanishing.pass);
  }
}

TEST_CASE("axiom sampling is a function of the seed") {
  auto d = build_algebra(system_of("projective-5"), TraceStrategy::Generic);
  AxiomReport a = frobenius_axiom_check(d, 11, 40), b = frobenius_axiom_check(d, 11, 40);
  CHECK_FALSE(a.exhaustive_associativity);
  CHECK(a.associativity.checked == b.associativity.checked);
  CHECK(a.invariance.checked == b.invariance.checked);
  CHECK(sample_seed(11, 3) == sample_seed(11, 3));
  CHECK(sample_seed(11, 3) != sample_seed(11, 4));
  CHECK(sample_seed(11, 3) != sample_seed(12, 3));

  auto small = build_algebra(system_of("projective-4"), TraceStrategy::Generic);
  CHECK(frobenius_axiom_check(small, 11, 40).exhaustive_associativity);
}

TEST_CASE("a corrupted structure constant is caught") {
  auto d = build_algebra(system_of("projective-4"), TraceStrategy::Generic);
  auto& t = d.tensors.at({1, 1});
  REQUIRE_FALSE(t.entries.empty());
  // swap two entries of C_{1,1} that differ
  std::size_t i = 0, j = 1;
  while (j < t.entries.size() && t.entries[j] == t.entries[i]) ++j;
  REQUIRE(j < t.entries.size());
  std::swap(t.entries[i], t.entries[j]);
  CHECK_FALSE(frobenius_axiom_check(d, 1, 60).all_pass());
}
