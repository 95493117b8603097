#include <doctest.h>

#include <random>

#include "lgfrob/errors.hpp"
#include "lgfrob/fixtures.hpp"
#include "lgfrob/jacobian.hpp"
#include "lgfrob/parser.hpp"
#include "lgfrob/toric.hpp"
#include "oracle.hpp"

using namespace lgfrob;

namespace {

JacobianSystem system_of(const Fixture& fx, const std::string& poly) {
  FanData fan = fx.fan;
  fan.normalize();
  GradingMap g = class_group(fan);
  return JacobianSystem(parse_polynomial(poly, fx.variables), fan, g, fx.variables);
}

JacobianSystem system_of(const std::string& name) {
  Fixture fx = make_fixture(name);
  return system_of(fx, fx.polynomial);
}

oracle::Poly to_oracle(const Polynomial& p) {
  oracle::Poly out;
  for (const auto& [m, c] : p.terms()) out[std::vector<int>(m.exponents().begin(), m.exponents().end())] = c;
  return out;
}

std::vector<oracle::Vec> degrees_of(const GradingMap& g) {
  return {g.degrees.begin(), g.degrees.end()};
}

Monomial mono(std::vector<std::int32_t> e) { return Monomial(std::move(e)); }

Polynomial random_combination(std::mt19937_64& rng, const std::vector<Monomial>& monos, std::size_t nvars) {
  Polynomial p(nvars);
  std::uniform_int_distribution<int> c(-4, 4);
  for (std::size_t k = 0; k < 4 && !monos.empty(); ++k) p.add_term(monos[rng() % monos.size()], Rational(c(rng)));
  return p;
}

}  // namespace

TEST_CASE("Fermat cubic pieces") {
  JacobianSystem sys = system_of("projective-3");
  QuotientBasis j3 = graded_piece(sys, Ideal::Jacobian, {3});
  CHECK(j3.dim() == 1);
  CHECK(j3.basis() == std::vector<Monomial>{mono({1, 1, 1})});
  CHECK(j3.ambient().size() == 10);
  CHECK(j3.rank() == 9);

  QuotientBasis e6 = graded_piece(sys, Ideal::Euler, {6});
  CHECK(e6.basis() == std::vector<Monomial>{mono({2, 2, 2})});

  CHECK(dim_R(sys, 0) == 1);
  CHECK(dim_R(sys, 1) == 1);
}

TEST_CASE("Fermat quintic dimensions match the Hilbert series") {
  JacobianSystem sys = system_of("projective-5");
  QuotientBasis j5 = graded_piece(sys, Ideal::Jacobian, {5});
  CHECK(j5.dim() == 101);
  CHECK(j5.rank() == 25);
  CHECK(j5.ambient().size() == 126);

  auto series = oracle::fermat_hilbert_series({5, 5, 5, 5, 5});
  for (std::int64_t a = 0; a <= 4; ++a) {
    const auto t = static_cast<std::size_t>(5 * a);
    const std::int64_t expected = t < series.size() ? series[t] : 0;
    CHECK(static_cast<std::int64_t>(dim_R(sys, a)) == expected);
  }
}

TEST_CASE("piece dimensions agree with an independent elimination") {
  for (const std::string name : {"projective-3", "projective-4", "weighted-p112", "p1xp1", "bundle-p2"}) {
    CAPTURE(name);
    JacobianSystem sys = system_of(name);
    std::vector<oracle::Poly> partials;
    for (const auto& p : sys.partials()) partials.push_back(to_oracle(p));
    std::vector<oracle::Poly> euler;
    for (const auto& p : sys.euler_generators()) euler.push_back(to_oracle(p));
    const auto degrees = degrees_of(sys.grading());
    const std::int64_t m = static_cast<std::int64_t>(sys.dim());
    const int bound = static_cast<int>(4 * m + 4);
    // the dense oracle is slow on the larger pieces of the bundle
    const std::int64_t last = name == "bundle-p2" ? 2 : m;
    for (std::int64_t a = 0; a <= last; ++a) {
      CAPTURE(a);
      const ClassElement alpha = sys.grading().multiple_of_beta(a);
      QuotientBasis q = graded_piece(sys, Ideal::Jacobian, alpha);
      CHECK(q.dim() == oracle::quotient_dim(partials, degrees, alpha, bound));
      CHECK(q.ambient().size() == oracle::monomials_of_degree(degrees, alpha, bound).size());
    }
    if (name == "bundle-p2") continue;
    const ClassElement top = sys.grading().multiple_of_beta(m);
    CHECK(graded_piece(sys, Ideal::Euler, top).dim() == oracle::quotient_dim(euler, degrees, top, bound));
  }
}

TEST_CASE("dim S = rank + dim R on every piece") {
  for (const std::string name : {"projective-4", "bundle-p2", "p1xp1", "degenerate-cubic"}) {
    JacobianSystem sys = system_of(name);
    for (std::int64_t a = 0; a <= static_cast<std::int64_t>(sys.dim()) + 1; ++a)
      for (Ideal ideal : {Ideal::Jacobian, Ideal::Euler}) {
        QuotientBasis q = graded_piece(sys, ideal, sys.grading().multiple_of_beta(a));
        CHECK(q.ambient().size() == q.rank() + q.dim());
        CHECK(q.pivots().size() == q.rank());
      }
  }
}

TEST_CASE("Macaulay vanishing") {
  auto quintic = macaulay_vanishing_check(system_of("projective-5"), 4);
  CHECK(quintic.pass);
  REQUIRE(quintic.dims.size() == 2);
  CHECK(quintic.dims[0] == std::pair<std::int64_t, std::size_t>{4, 0});
  CHECK(quintic.dims[1] == std::pair<std::int64_t, std::size_t>{5, 0});

  CHECK(macaulay_vanishing_check(system_of("projective-3"), 2).pass);

  auto degenerate = macaulay_vanishing_check(system_of("degenerate-cubic"), 2);
  CHECK_FALSE(degenerate.pass);
  for (const auto& [p, d] : degenerate.dims) CHECK(d > 0);

  for (const std::string name : {"projective-4", "weighted-p112", "bundle-p2"}) {
    JacobianSystem sys = system_of(name);
    CHECK(macaulay_vanishing_check(sys, static_cast<std::int64_t>(sys.dim())).pass);
  }
}

TEST_CASE("normal form examples") {
  JacobianSystem sys = system_of("projective-3");
  QuotientBasis j3 = graded_piece(sys, Ideal::Jacobian, {3});
  const std::vector<std::string> xyz{"x", "y", "z"};
  CHECK(j3.normal_form(parse_polynomial("x^3", xyz)) == std::vector<Rational>{0});
  CHECK(j3.normal_form(parse_polynomial("x*y*z", xyz)) == std::vector<Rational>{1});
  CHECK(j3.normal_form(parse_polynomial("2*x*y*z - y^3", xyz)) == std::vector<Rational>{2});
  CHECK_THROWS_AS(j3.normal_form(parse_polynomial("x^2", xyz)), DegreeMismatch);

  QuotientBasis e6 = graded_piece(sys, Ideal::Euler, {6});
  CHECK(e6.normal_form(parse_polynomial("x^2*y^2*z^2", xyz)) == std::vector<Rational>{1});
  CHECK(e6.normal_form(parse_polynomial("x^3*y^3", xyz)) == std::vector<Rational>{0});
}

TEST_CASE("pivot monomials re-expand within the piece") {
  JacobianSystem sys = system_of("bundle-p2");
  QuotientBasis q = graded_piece(sys, Ideal::Jacobian, sys.grading().multiple_of_beta(1));
  // m - sum c_k b_k lies in J: the two sides have the same class in R
  for (const auto& m : q.ambient()) {
    const SparseRow nf = q.normal_form(m);
    Polynomial lifted = q.lift(q.normal_form(Polynomial::term(m, 1)));
    for (const auto& [mm, c] : lifted.terms()) {
      CHECK(sys.grading().degree_of(mm) == q.degree());
      CHECK(q.basis_index(mm).has_value());
    }
    if (auto idx = q.basis_index(m)) {
      REQUIRE(nf.size() == 1);
      CHECK(nf[0].first == *idx);
      CHECK(nf[0].second == 1);
    }
  }
}

TEST_CASE("normal form is linear on random samples") {
  std::mt19937_64 rng(31);
  for (const std::string name : {"projective-4", "bundle-p2", "weighted-p112"}) {
    JacobianSystem sys = system_of(name);
    QuotientBasis q = graded_piece(sys, Ideal::Jacobian, sys.grading().multiple_of_beta(1));
    for (int t = 0; t < 30; ++t) {
      Polynomial p = random_combination(rng, q.ambient(), sys.nvars());
      Polynomial r = random_combination(rng, q.ambient(), sys.nvars());
      Rational alpha(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3));
      alpha.canonicalize();
      auto lhs = q.normal_form(Polynomial::constant(sys.nvars(), alpha) * p + r);
      auto np = q.normal_form(p), nr = q.normal_form(r);
      for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] == alpha * np[i] + nr[i]);
    }
  }
}

TEST_CASE("z1...zr times J lands in J0") {
  std::mt19937_64 rng(32);
  for (const std::string name : {"projective-3", "projective-4", "bundle-p2", "weighted-p112"}) {
    CAPTURE(name);
    JacobianSystem sys = system_of(name);
    const std::int64_t m = static_cast<std::int64_t>(sys.dim());
    const ClassElement top = sys.grading().multiple_of_beta(m - 1);
    QuotientBasis e = graded_piece(sys, Ideal::Euler, sys.grading().multiple_of_beta(m));
    std::vector<std::int32_t> ones(sys.nvars(), 1);
    const Polynomial zz = Polynomial::term(mono(ones), 1);
    for (int t = 0; t < 20; ++t) {
      // random element of J_{(m-1) beta}: sum of cofactor * f_i
      Polynomial u(sys.nvars());
      for (std::size_t i = 0; i < sys.nvars(); ++i) {
        const Polynomial& fi = sys.partials()[i];
        if (fi.is_zero()) continue;
        auto cof = monomial_basis(sys.grading(), sys.fan(), top - *fi.degree());
        u = u + random_combination(rng, cof, sys.nvars()) * fi;
      }
      for (const auto& c : e.normal_form(zz * u)) CHECK(c == 0);
    }
  }
}

TEST_CASE("socle certificates") {
  auto cubic = socle_certificates(system_of("projective-3"), 2);
  CHECK(cubic.consistent());
  CHECK(cubic.top_generators == std::vector<Monomial>{mono({1, 1, 1})});
  CHECK(cubic.euler_generators == std::vector<Monomial>{mono({2, 2, 2})});

  auto quintic = socle_certificates(system_of("projective-5"), 4);
  CHECK(quintic.top_dim == 1);
  CHECK(quintic.euler_dim == 1);

  auto bad = socle_certificates(system_of("degenerate-cubic"), 2);
  CHECK_FALSE(bad.consistent());
  CHECK(bad.top_dim != 1);
}

TEST_CASE("Euler membership") {
  auto cubic = euler_membership_check(system_of("projective-3"));
  CHECK(cubic.pass);
  CHECK(cubic.lambda_beta != 0);
  CHECK(euler_membership_check(system_of("bundle-p6")).pass);
  CHECK(euler_membership_check(system_of("bundle-p2")).pass);
  CHECK(euler_membership_check(system_of("weighted-p112")).pass);
}

TEST_CASE("inhomogeneous input is rejected before any piece is built") {
  Fixture fx = make_fixture("projective-3");
  CHECK_THROWS_AS(system_of(fx, "x^3 + y^2"), NotHomogeneous);
  CHECK_THROWS_AS(system_of(fx, "x^2 + y^2 + z^2"), DegreeMismatch);
}

TEST_CASE("critical locus containment") {
  Fixture p6 = make_fixture("bundle-p6");
  JacobianSystem sys = system_of("bundle-p6");
  auto res = crit_containment_check(sys, p6.zero_sets);
  REQUIRE(res.size() == 2);
  CHECK(res[0].pass);
  CHECK(res[1].pass);

  JacobianSystem cubic = system_of("projective-3");
  auto bad = crit_containment_check(cubic, {{1, 2}});
  REQUIRE(bad.size() == 1);
  CHECK_FALSE(bad[0].pass);
  CHECK_FALSE(bad[0].witness.empty());
}

TEST_CASE("prefilter and thread count do not change the pieces") {
  JacobianSystem sys = system_of("projective-5");
  std::vector<PieceRequest> req;
  for (std::int64_t a = 0; a <= 5; ++a) req.push_back({Ideal::Jacobian, sys.grading().multiple_of_beta(a)});
  req.push_back({Ideal::Euler, sys.grading().multiple_of_beta(4)});

  PieceOptions off;
  off.modular_prefilter = false;
  auto base = graded_pieces(sys, req, off, 1);
  for (std::size_t threads : {std::size_t{1}, std::size_t{3}, std::size_t{8}}) {
    auto got = graded_pieces(sys, req, PieceOptions{}, threads);
    REQUIRE(got.size() == base.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].basis() == base[i].basis());
      CHECK(got[i].pivots() == base[i].pivots());
      CHECK(got[i].rank() == base[i].rank());
      for (std::size_t k = 0; k < got[i].ambient().size(); k += 7)
        CHECK(got[i].normal_form(got[i].ambient()[k]) == base[i].normal_form(base[i].ambient()[k]));
    }
  }
  // degree 5 beta and up are all pivots: the modular rank certifies them
  auto filtered = graded_pieces(sys, {{Ideal::Jacobian, {20}}}, PieceOptions{}, 1);
  CHECK(filtered[0].dim() == 0);
  CHECK(filtered[0].prefiltered());
}

TEST_CASE("Hodge symmetry on consistent fixtures") {
  for (const std::string name : {"projective-3", "projective-4", "projective-5", "bundle-p2", "weighted-p112"}) {
    JacobianSystem sys = system_of(name);
    const std::int64_t m = static_cast<std::int64_t>(sys.dim());
    for (std::int64_t a = 0; a < m; ++a) CHECK(dim_R(sys, a) == dim_R(sys, m - 1 - a));
  }
}
