// Acceptance runner: one line per criterion, "criterion N: PASS|FAIL ...".
// Usage: acceptance [--criterion N]   (all criteria when omitted)

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "lgfrob/cli.hpp"
#include "lgfrob/errors.hpp"
#include "lgfrob/fixtures.hpp"
#include "lgfrob/frobenius.hpp"
#include "lgfrob/linalg.hpp"
#include "lgfrob/parser.hpp"
#include "lgfrob/toric.hpp"
#include "oracle.hpp"

using namespace lgfrob;

namespace {

// Collects named sub-checks; the first failure becomes the detail.
struct Verdict {
  bool pass = true;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

struct Loaded {
  Fixture fx;
  FanData fan;
  GradingMap grading;
};

Loaded load(const std::string& name) {
  Loaded l{make_fixture(name), {}, {}};
  l.fan = l.fx.fan;
  l.fan.normalize();
  l.grading = class_group(l.fan);
  return l;
}

JacobianSystem system_of(const Loaded& l, const std::string& poly) {
  return JacobianSystem(parse_polynomial(poly, l.fx.variables), l.fan, l.grading, l.fx.variables);
}

JacobianSystem system_of(const Loaded& l) { return system_of(l, l.fx.polynomial); }

std::string join(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

bool gram_full_rank(const FrobeniusAlgebraData& d) {
  for (std::size_t a = 0; a < d.m; ++a) {
    GramMatrix g = pairing_gram(d, a);
    if (g.values.rows() != g.values.cols() || rank(g.values) != g.values.rows()) return false;
  }
  return true;
}

void axioms(Verdict& v, const FrobeniusAlgebraData& d, std::size_t samples) {
  AxiomReport r = frobenius_axiom_check(d, 0, samples);
  v.check(r.unit.pass, "unit axiom");
  v.check(r.commutativity.pass, "commutativity");
  v.check(r.associativity.pass, "associativity");
  v.check(r.invariance.pass, "invariance");
  v.check(r.nondegeneracy.pass, "nondegeneracy");
  v.check(r.vanishing.pass, "products in degree >= m vanish");
  v.note("axioms " + std::string(r.all_pass() ? "pass" : "FAIL") + " (assoc " +
         std::to_string(r.associativity.checked) + (r.exhaustive_associativity ? " exhaustive" : " sampled") + ")");
}

Verdict criterion1() {
  Verdict v;
  Loaded l = load("projective-3");
  JacobianSystem sys = system_of(l);
  SocleCertificate sc = socle_certificates(sys, 2);
  v.check(sc.top_dim == 1 && sc.euler_dim == 1, "socle dims (1,1)");
  v.check(sc.top_generators == std::vector<Monomial>{Monomial({1, 1, 1})}, "socle generator xyz");
  v.check(sc.euler_generators == std::vector<Monomial>{Monomial({2, 2, 2})}, "R0 generator x^2y^2z^2");
  auto d = build_algebra(sys, TraceStrategy::Generic);
  v.check(hodge_row(d) == std::vector<std::size_t>{1, 1}, "dims (1,1)");
  v.check(d.normalized_volume == 9, "m! Vol = 9");
  TraceScalar t = trace({1}, d);
  v.check(t.value == 9 && t.unit_exponent == 1, "trace 9 (2 pi i)^1");
  v.check(gram_full_rank(d), "Gram nondegenerate");
  axioms(v, d, 200);
  v.note("dims " + join(hodge_row(d)) + ", trace " + t.to_string());
  return v;
}

Verdict criterion2() {
  Verdict v;
  Loaded l = load("projective-5");
  JacobianSystem sys = system_of(l);
  MacaulayCheck mc = macaulay_vanishing_check(sys, 4, 1);
  v.check(mc.pass && mc.dims.size() == 2 && mc.dims[0].first == 4 && mc.dims[1].first == 5,
          "Macaulay vanishing at p = 4, 5");
  AlgebraOptions opts;
  opts.pieces.modular_prefilter = true;
  auto d = build_algebra(sys, TraceStrategy::Generic, opts);
  v.check(hodge_row(d) == std::vector<std::size_t>{1, 101, 101, 1}, "dims (1,101,101,1)");
  GramMatrix g1 = pairing_gram(d, 1);
  v.check(g1.values.rows() == 101 && g1.values.cols() == 101 && rank(g1.values) == 101, "G_1 101x101 full rank");
  AxiomReport r = frobenius_axiom_check(d, 0, 200);
  v.check(r.associativity.pass && r.associativity.checked >= 200, "associativity on 200 seeded triples");
  v.check(r.invariance.pass && r.invariance.checked >= 200, "invariance on 200 seeded triples");
  v.check(r.all_pass(), "all axioms");
  v.note("dims " + join(hodge_row(d)) + ", rank G_1 = " + std::to_string(rank(g1.values)) + ", " +
         std::to_string(r.associativity.checked) + " associativity samples");
  return v;
}

Verdict criterion3() {
  Verdict v;
  Loaded l = load("p1xp1");
  JacobianSystem sys = system_of(l);
  std::vector<std::size_t> dims{dim_R(sys, 0), dim_R(sys, 1)};
  v.check(dims == std::vector<std::size_t>{1, 1}, "dims (1,1), got " + join(dims));
  try {
    auto d = build_algebra(sys, TraceStrategy::Generic);
    axioms(v, d, 200);
  } catch (const SocleNotOneDimensional& e) {
    v.check(false, std::string("algebra: ") + e.what());
  }
  v.note("dims " + join(dims));
  return v;
}

Verdict criterion4() {
  Verdict v;
  Loaded l = load("weighted-p112");
  ValidationReport vr = validate_fan(l.fan);
  v.check(vr.all_pass(), "validation all-pass");
  auto poly = anticanonical_polytope(l.fan);
  std::vector<IntVector> expected{{-1, -1}, {-1, 1}, {3, -1}};
  v.check(poly.vertices == expected, "Gorenstein vertices (-1,-1), (-1,1), (3,-1)");
  auto d = build_algebra(system_of(l), TraceStrategy::Generic);
  v.check(hodge_row(d) == std::vector<std::size_t>{1, 1}, "dims (1,1)");
  axioms(v, d, 200);
  v.note("dims " + join(hodge_row(d)));
  return v;
}

Verdict criterion5() {
  Verdict v;
  Loaded l = load("bundle-p2");
  JacobianSystem sys = system_of(l);
  for (const auto& c : crit_containment_check(sys, l.fx.zero_sets))
    v.check(c.pass, "Crit(f) containment: " + c.witness);
  MacaulayCheck mc = macaulay_vanishing_check(sys, 3, 1);
  v.check(mc.pass, "Macaulay vanishing at p = 3, 4");
  auto d = build_algebra(sys, TraceStrategy::Generic);
  auto row = hodge_row(d);
  v.check(row.size() == 3 && row[0] == 1 && row[2] == 1, "dims of the form (1,d,1)");
  v.check(d.euler_piece.dim() == 1 && d.pieces[2].dim() == 1, "socle certificates (1,1)");
  v.check(gram_full_rank(d), "Gram matrices square and full rank");
  axioms(v, d, 200);
  v.note("dims " + join(row));
  return v;
}

Verdict criterion6() {
  Verdict v;
  Loaded l = load("bundle-p6");
  ValidationReport vr = validate_fan(l.fan);
  v.check(vr.simplicial.pass && vr.complete.pass && vr.gorenstein.pass && vr.ample.pass && vr.all_pass(),
          "fan validation all-pass");
  v.check(l.grading.rank == 2, "class group rank 2");
  auto t = unimodular_transform(l.grading.degrees, l.fx.expected_degrees);
  v.check(t.has_value(), "degrees match (-2,1), (-3,1) up to a unimodular transform");
  if (t) {
    ClassElement beta(2, 0);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) beta[r] += to_int64((*t)(r, c)) * l.grading.beta[c];
    v.check(beta == ClassElement{2, 2}, "beta = (2,2)");
  }
  std::vector<Integer> betti = betti_numbers(l.fan);
  std::vector<Integer> expected{1, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 1};
  v.check(betti == expected, "Betti polynomial (1+...+t^6)(1+t)");
  v.check(extraisom_necessary_check(l.fan).status == ExtraIsomStatus::TriviallyHolds, "extraisom trivially holds");
  JacobianSystem sys = system_of(l);
  for (const auto& c : crit_containment_check(sys, l.fx.zero_sets))
    v.check(c.pass, "Crit(f) containment: " + c.witness);
  const std::int64_t cap = l.fx.max_degree_a.value_or(1);
  std::vector<std::size_t> dims;
  for (std::int64_t a = 0; a <= cap; ++a) dims.push_back(dim_R(sys, a));
  v.check(!dims.empty() && dims[0] == 1, "dim R_0 = 1");
  v.note("dims for a <= " + std::to_string(cap) + ": " + join(dims));
  return v;
}

Verdict criterion7() {
  Verdict v;
  Loaded f3 = load("hirzebruch3");
  ValidationReport vr = validate_fan(f3.fan);
  v.check(!vr.ample.pass && vr.ample.witness.find("(-1,-1)") != std::string::npos &&
              vr.ample.witness.find("= -2") != std::string::npos,
          "F3 ample fails with the pairing witness");
  Loaded dc = load("degenerate-cubic");
  v.check(!socle_certificates(system_of(dc), 2).consistent(), "x^3 fails the socle certificates");

  auto code = [](std::vector<std::string> args, const std::string& in_text) {
    std::istringstream in(in_text);
    std::ostringstream out, err;
    return run_cli(args, in, out, err);
  };
  auto doc = [&](const std::string& name) {
    std::istringstream in;
    std::ostringstream out, err;
    run_cli({"fixture", name}, in, out, err);
    return out.str();
  };
  v.check(code({"report", "--json-only"}, doc("projective-3")) == kExitOk, "exit 0 on the cubic");
  v.check(code({"validate", "--json-only"}, doc("hirzebruch3")) == kExitValidation, "exit 3 on F3");
  v.check(code({"report", "--json-only"}, doc("degenerate-cubic")) == kExitCertificate, "exit 4 on x^3");
  v.check(code({"report"}, "{ broken") == kExitInput, "exit 2 on malformed JSON");
  v.check(code({"fixture", "unknown"}, "") == kExitInput, "exit 2 on an unknown fixture");
  v.note("F3 witness: " + vr.ample.witness);
  return v;
}

Verdict criterion8() {
  Verdict v;
  std::mt19937_64 rng(8);

  // parser round-trip
  {
    const std::vector<std::string> names{"a", "b", "c"};
    bool ok = true;
    for (int t = 0; t < 200 && ok; ++t) {
      Polynomial p(3);
      for (int k = 0; k < 5; ++k) {
        Rational c(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 4));
        c.canonicalize();
        p.add_term(Monomial({static_cast<std::int32_t>(rng() % 4), static_cast<std::int32_t>(rng() % 4),
                             static_cast<std::int32_t>(rng() % 4)}),
                   c);
      }
      ok = parse_polynomial(to_string(p, names), names) == p;
    }
    v.check(ok, "parser round-trip");
  }
  // SNF certificates
  {
    bool ok = true;
    for (int t = 0; t < 100 && ok; ++t) {
      const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
      IntMatrix a(rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a(i, j) = static_cast<long>(rng() % 19) - 9;
      auto s = smith_normal_form(a);
      ok = s.U * a * s.V == s.D && abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1;
      auto f = s.invariant_factors();
      for (std::size_t i = 0; ok && i + 1 < f.size(); ++i) ok = f[i + 1] % f[i] == 0;
    }
    v.check(ok, "SNF certificates");
  }
  // two-method monomial counts: fiber enumeration vs brute force
  {
    bool ok = true;
    for (const std::string name : {"projective-4", "weighted-p112", "bundle-p2", "p1xp1"}) {
      Loaded l = load(name);
      std::vector<oracle::Vec> deg(l.grading.degrees.begin(), l.grading.degrees.end());
      for (std::int64_t a = 0; a <= 2; ++a) {
        const ClassElement alpha = l.grading.multiple_of_beta(a);
        ok = ok && monomial_basis(l.grading, l.fan, alpha).size() ==
                       oracle::monomials_of_degree(deg, alpha, static_cast<int>(4 * a + 1)).size();
      }
      // lattice points of a*Delta correspond to monomials of degree a*beta
      Integer vol = normalized_volume(anticanonical_polytope(l.fan));
      std::vector<oracle::Vec> rays(l.fan.rays.begin(), l.fan.rays.end());
      ok = ok && vol == oracle::ehrhart_normalized_volume(rays, l.fan.dim, 4);
      for (std::int64_t a = 1; a <= 2; ++a)
        ok = ok && static_cast<std::int64_t>(monomial_basis(l.grading, l.fan, l.grading.multiple_of_beta(a)).size()) ==
                       oracle::lattice_points(rays, l.fan.dim, a, 4 * (a + 1));
    }
    v.check(ok, "lattice-point / monomial-count agreement");
  }
  // grading additivity
  {
    Loaded l = load("bundle-p2");
    bool ok = true;
    for (int t = 0; t < 200 && ok; ++t) {
      std::vector<std::int32_t> e1(5), e2(5);
      for (auto& x : e1) x = static_cast<std::int32_t>(rng() % 5);
      for (auto& x : e2) x = static_cast<std::int32_t>(rng() % 5);
      Monomial u(e1), w(e2);
      ok = l.grading.degree_of(u * w) == l.grading.degree_of(u) + l.grading.degree_of(w);
    }
    v.check(ok, "grading additivity");
  }
  // trace-strategy proportionality
  {
    bool ok = true;
    for (const std::string name : {"projective-3", "projective-4", "projective-5"}) {
      Loaded l = load(name);
      JacobianSystem sys = system_of(l);
      auto gen = build_algebra(sys, TraceStrategy::Generic);
      auto hes = build_algebra(sys, TraceStrategy::ProjectiveHessian);
      const Rational ratio = trace({1}, hes).value / trace({1}, gen).value;
      ok = ok && ratio != 0;
      for (std::size_t a = 0; a < gen.m; ++a) {
        GramMatrix g = pairing_gram(gen, a), h = pairing_gram(hes, a);
        for (std::size_t i = 0; i < g.values.rows(); ++i)
          for (std::size_t j = 0; j < g.values.cols(); ++j) ok = ok && h.values(i, j) == ratio * g.values(i, j);
      }
    }
    v.check(ok, "trace-strategy proportionality");
  }
  // mul_twisted sign law
  {
    bool ok = true;
    for (const std::string name : {"projective-4", "projective-5", "bundle-p2"}) {
      auto d = build_algebra(system_of(load(name)), TraceStrategy::Generic);
      const int sign = (d.m - 1) % 2 == 0 ? 1 : -1;
      for (int t = 0; t < 30; ++t) {
        const std::size_t a = rng() % d.m, b = d.m - 1 - a;
        Element u{a, std::vector<Rational>(d.dim(a), 0)}, w{b, std::vector<Rational>(d.dim(b), 0)};
        u.coords[rng() % u.coords.size()] = static_cast<long>(rng() % 5) + 1;
        w.coords[rng() % w.coords.size()] = static_cast<long>(rng() % 5) + 1;
        Element lhs = mul_twisted(u, w, d), rhs = mul_twisted(w, u, d);
        for (auto& c : rhs.coords) c *= sign;
        ok = ok && lhs == rhs;
      }
    }
    v.check(ok, "mul_twisted sign law");
  }
  // determinism across thread counts
  {
    RunConfig config = config_from_fixture(make_fixture("projective-5"));
    config.options.threads = 1;
    const std::string one = cmd_report(config).report.dump();
    bool ok = true;
    for (std::size_t threads : {3, 8}) {
      config.options.threads = threads;
      ok = ok && cmd_report(config).report.dump() == one;
    }
    v.check(ok, "determinism across thread counts");
  }
  v.note("7 property suites");
  return v;
}

struct Criterion {
  int id;
  double limit_s;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-8)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, 1.0, criterion1},   {2, 600.0, criterion2}, {3, 1.0, criterion3},  {4, 1.0, criterion4},
      {5, 60.0, criterion5},  {6, 600.0, criterion6}, {7, 10.0, criterion7}, {8, 300.0, criterion8},
  };
  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.check(secs < c.limit_s, "runtime limit");
    std::ostringstream line;
    line << "criterion " << c.id << ": " << (v.pass ? "PASS" : "FAIL");
    for (const auto& n : v.notes) line << "; " << n;
    if (!v.pass) {
      line << "; failed:";
      for (const auto& f : v.failures) line << " [" << f << "]";
    }
    line << std::fixed << std::setprecision(3) << " (" << secs << " s, limit " << std::setprecision(0) << c.limit_s
         << " s)";
    std::cout << line.str() << std::endl;
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
