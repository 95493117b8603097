#include "lgfrob/frobenius.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <sstream>

#include "lgfrob/errors.hpp"

namespace lgfrob {

namespace {

constexpr std::size_t kWitnessCap = 5;
constexpr std::size_t kExhaustiveTriples = 10000;

Monomial product_of_variables(std::size_t nvars) {
  return Monomial(std::vector<std::int32_t>(nvars, 1));
}

std::string coords_to_string(const std::vector<Rational>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ", ";
    s += to_string(c[i]);
  }
  return s + ")";
}

Element basis_element(const FrobeniusAlgebraData& d, std::size_t a, std::size_t i) {
  Element e{a, std::vector<Rational>(d.dim(a))};
  e.coords[i] = 1;
  return e;
}

Element random_element(const FrobeniusAlgebraData& d, std::size_t a, std::mt19937_64& rng) {
  Element e{a, std::vector<Rational>(d.dim(a))};
  if (e.coords.empty()) return e;
  std::uniform_int_distribution<std::size_t> pick(0, e.coords.size() - 1);
  std::uniform_int_distribution<int> num(1, 5);
  std::uniform_int_distribution<int> den(1, 3);
  std::size_t terms = 1 + rng() % std::min<std::size_t>(3, e.coords.size());
  for (std::size_t t = 0; t < terms; ++t) {
    int n = num(rng);
    if (rng() & 1) n = -n;
    e.coords[pick(rng)] += Rational(n, den(rng));
  }
  for (auto& c : e.coords) c.canonicalize();
  return e;
}

std::string describe(const Element& e) {
  return "deg " + std::to_string(e.degree) + " " + coords_to_string(e.coords);
}

// det via expansion along the last row, memoized over column subsets.
Polynomial polynomial_determinant(const std::vector<std::vector<Polynomial>>& h, std::size_t nvars) {
  const std::size_t n = h.size();
  std::vector<Polynomial> dp(std::size_t{1} << n, Polynomial(nvars));
  dp[0] = Polynomial::constant(nvars, 1);
  for (std::size_t mask = 1; mask < dp.size(); ++mask) {
    const std::size_t k = static_cast<std::size_t>(__builtin_popcountll(mask));
    const std::size_t row = k - 1;
    Polynomial acc(nvars);
    std::size_t pos = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      const Polynomial& entry = h[row][j];
      const Polynomial& minor = dp[mask & ~(std::size_t{1} << j)];
      if (!entry.is_zero() && !minor.is_zero()) {
        Polynomial t = entry * minor;
        if ((row + pos) % 2) acc -= t;
        else acc += t;
      }
      ++pos;
    }
    dp[mask] = std::move(acc);
  }
  return dp.back();
}

}  // namespace

std::string TraceScalar::to_string() const {
  return lgfrob::to_string(value) + " * (2*pi*i)^" + std::to_string(unit_exponent);
}

std::string to_string(TraceStrategy s) {
  return s == TraceStrategy::Generic ? "generic" : "projective-hessian";
}

TraceStrategy parse_trace_strategy(const std::string& name) {
  if (name == "generic") return TraceStrategy::Generic;
  if (name == "projective-hessian" || name == "hessian") return TraceStrategy::ProjectiveHessian;
  throw InvalidInput("unknown trace strategy '" + name + "' (expected generic or projective-hessian)");
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Polynomial hessian_determinant(const Polynomial& f) {
  const std::size_t n = f.nvars();
  std::vector<Polynomial> first;
  first.reserve(n);
  for (std::size_t i = 0; i < n; ++i) first.push_back(partial_derivative(f, i));
  std::vector<std::vector<Polynomial>> h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h[i].reserve(n);
    for (std::size_t j = 0; j < n; ++j) h[i].push_back(partial_derivative(first[i], j));
  }
  return polynomial_determinant(h, n);
}

int FrobeniusAlgebraData::trace_sign() const {
  const std::size_t e = m * (m - 1) / 2;
  return e % 2 ? 1 : -1;
}

Polynomial FrobeniusAlgebraData::lift(const Element& u) const {
  if (u.degree >= m) return Polynomial(names.size());
  return pieces[u.degree].lift(u.coords);
}

Element FrobeniusAlgebraData::multiply(const Element& u, const Element& v) const {
  const std::size_t c = u.degree + v.degree;
  Element out{c, {}};
  if (c >= m) return out;
  out.coords.assign(dim(c), Rational(0));
  const bool swap = u.degree > v.degree;
  const StructureTensor& t = tensors.at({std::min(u.degree, v.degree), std::max(u.degree, v.degree)});
  for (std::size_t i = 0; i < u.coords.size(); ++i) {
    if (sgn(u.coords[i]) == 0) continue;
    for (std::size_t j = 0; j < v.coords.size(); ++j) {
      if (sgn(v.coords[j]) == 0) continue;
      const SparseRow& entry = swap ? t.at(j, i) : t.at(i, j);
      Rational s = u.coords[i] * v.coords[j];
      for (const auto& [k, x] : entry) out.coords[k] += s * x;
    }
  }
  return out;
}

Element FrobeniusAlgebraData::multiply_direct(const Element& u, const Element& v) const {
  const std::size_t c = u.degree + v.degree;
  Polynomial p = lift(u) * lift(v);
  if (c < m) return Element{c, pieces[c].normal_form(p)};
  auto it = high_pieces.find(c);
  if (it == high_pieces.end() || p.is_zero()) return Element{c, {}};
  std::vector<Rational> coords = it->second.normal_form(p);
  if (std::all_of(coords.begin(), coords.end(), [](const Rational& x) { return sgn(x) == 0; })) coords.clear();
  return Element{c, std::move(coords)};
}

FrobeniusAlgebraData build_algebra(const JacobianSystem& sys, TraceStrategy strategy, const AlgebraOptions& options) {
  const GradingMap& g = sys.grading();
  const std::size_t m = sys.dim();
  const std::size_t r = sys.nvars();
  FrobeniusAlgebraData d;
  d.m = m;
  d.strategy = strategy;
  d.names = sys.names();

  if (strategy == TraceStrategy::ProjectiveHessian && !is_standard_projective_fan(sys.fan(), g))
    throw StrategyNotAdmissible("the projective-hessian strategy needs the standard fan of P^" +
                                std::to_string(r - 1));

  std::vector<PieceRequest> requests;
  for (std::size_t a = 0; a <= m; ++a)
    requests.push_back({Ideal::Jacobian, g.multiple_of_beta(static_cast<std::int64_t>(a))});
  requests.push_back({Ideal::Euler, g.multiple_of_beta(static_cast<std::int64_t>(m))});
  std::vector<QuotientBasis> got = graded_pieces(sys, requests, options.pieces, options.threads);
  d.euler_piece = std::move(got.back());
  d.high_pieces.emplace(m, std::move(got[m]));
  got.resize(m);
  d.pieces = std::move(got);

  const QuotientBasis& top = d.pieces[m - 1];
  if (top.dim() != 1 || d.euler_piece.dim() != 1)
    throw SocleNotOneDimensional("dim R(f)_{(m-1) beta} = " + std::to_string(top.dim()) +
                                 ", dim R0(f)_{m beta} = " + std::to_string(d.euler_piece.dim()) +
                                 "; both must be 1");
  d.socle_generator = top.basis()[0];
  d.euler_basis_monomial = d.euler_piece.basis()[0];

  if (strategy == TraceStrategy::Generic) {
    d.generator_coordinate = 1;
  } else {
    Polynomial h = hessian_determinant(sys.f()) * product_of_variables(r);
    Rational c = h.is_zero() ? Rational(0) : d.euler_piece.normal_form(h)[0];
    if (sgn(c) == 0)
      throw HessianGeneratorZero("z_1...z_r det(Hess f) reduces to zero in R0(f)_{m beta}");
    d.generator_coordinate = c;
  }

  d.normalized_volume = normalized_volume(anticanonical_polytope(sys.fan()));

  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; a + b < m; ++b) {
      StructureTensor t;
      t.a = a;
      t.b = b;
      t.rows = d.dim(a);
      t.cols = d.dim(b);
      t.entries.reserve(t.rows * t.cols);
      const QuotientBasis& target = d.pieces[a + b];
      for (const Monomial& x : d.pieces[a].basis())
        for (const Monomial& y : d.pieces[b].basis()) t.entries.push_back(target.normal_form(x * y));
      d.tensors.emplace(std::make_pair(a, b), std::move(t));
    }
  }

  // Products in degrees >= m. Divisor certificates need R(f)_{m beta} = 0.
  const QuotientBasis& mpiece = d.high_pieces.at(m);
  const bool divisor_ok = mpiece.dim() == 0;
  struct Pending {
    std::size_t slot;
    Monomial product;
    std::string label;
  };
  std::vector<Pending> pending;
  std::set<std::size_t> needed;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      if (a + b < m) continue;
      VanishingProducts vp;
      vp.a = a;
      vp.b = b;
      const std::size_t slot = d.vanishing.size();
      for (const Monomial& x : d.pieces[a].basis()) {
        for (const Monomial& y : d.pieces[b].basis()) {
          ++vp.checked;
          Monomial xy = x * y;
          bool certified = false;
          if (a + b == m) {
            certified = mpiece.normal_form(xy).empty();
          } else if (divisor_ok) {
            certified = std::any_of(mpiece.ambient().begin(), mpiece.ambient().end(),
                                    [&](const Monomial& w) { return w.divides(xy); });
          }
          if (!certified) {
            if (a + b == m) {
              ++vp.nonzero;
              if (vp.witness.empty())
                vp.witness = to_string(x, d.names) + " * " + to_string(y, d.names) + " is nonzero in R(f)_{" +
                             std::to_string(a + b) + " beta}";
            } else {
              needed.insert(a + b);
              pending.push_back({slot, xy, to_string(x, d.names) + " * " + to_string(y, d.names)});
            }
          }
        }
      }
      d.vanishing.push_back(std::move(vp));
    }
  }
  if (!needed.empty()) {
    std::vector<PieceRequest> extra;
    for (std::size_t p : needed) extra.push_back({Ideal::Jacobian, g.multiple_of_beta(static_cast<std::int64_t>(p))});
    std::vector<QuotientBasis> more = graded_pieces(sys, extra, options.pieces, options.threads);
    std::size_t k = 0;
    for (std::size_t p : needed) d.high_pieces.emplace(p, std::move(more[k++]));
    for (const Pending& q : pending) {
      VanishingProducts& vp = d.vanishing[q.slot];
      if (!d.high_pieces.at(vp.a + vp.b).normal_form(q.product).empty()) {
        ++vp.nonzero;
        if (vp.witness.empty())
          vp.witness = q.label + " is nonzero in R(f)_{" + std::to_string(vp.a + vp.b) + " beta}";
      }
    }
  }

  std::vector<Rational> unit{Rational(1)};
  d.socle_trace = trace(unit, d).value;

  d.gram.reserve(m);
  for (std::size_t a = 0; a < m; ++a) {
    const std::size_t b = m - 1 - a;
    RatMatrix gm(d.dim(a), d.dim(b));
    const StructureTensor& t = d.tensors.at({std::min(a, b), std::max(a, b)});
    for (std::size_t i = 0; i < gm.rows(); ++i) {
      for (std::size_t j = 0; j < gm.cols(); ++j) {
        const SparseRow& e = a <= b ? t.at(i, j) : t.at(j, i);
        if (!e.empty()) gm(i, j) = d.socle_trace * e[0].second;
      }
    }
    d.gram.push_back(std::move(gm));
  }
  return d;
}

TraceScalar trace(const std::vector<Rational>& u, const FrobeniusAlgebraData& d) {
  const QuotientBasis& top = d.pieces[d.m - 1];
  if (u.size() != top.dim())
    throw DegreeMismatch("trace takes an element of R(f)_{(m-1) beta} with " + std::to_string(top.dim()) +
                         " coordinates, got " + std::to_string(u.size()));
  Polynomial lifted = top.lift(u) * product_of_variables(d.names.size());
  Rational c = lifted.is_zero() ? Rational(0) : d.euler_piece.normal_form(lifted)[0];
  c /= d.generator_coordinate;
  TraceScalar t;
  t.value = Rational(d.trace_sign()) * c * Rational(d.normalized_volume);
  t.unit_exponent = d.unit_exponent();
  return t;
}

GramMatrix pairing_gram(const FrobeniusAlgebraData& d, std::size_t a) {
  if (a >= d.m) throw DegreeMismatch("Gram matrix degree " + std::to_string(a) + " is outside 0.." + std::to_string(d.m - 1));
  return GramMatrix{d.gram[a], d.unit_exponent()};
}

Element mul_twisted(const Element& u, const Element& v, const FrobeniusAlgebraData& d) {
  if (u.degree + v.degree + 1 != d.m)
    throw DegreeMismatch("mul_twisted needs a + b = m - 1; got a = " + std::to_string(u.degree) +
                         ", b = " + std::to_string(v.degree) + ", m = " + std::to_string(d.m));
  Element out = d.multiply(u, v);
  if (v.degree % 2)
    for (auto& c : out.coords) c = -c;
  return out;
}

void AxiomResult::fail(std::string w) {
  pass = false;
  if (witnesses.size() < kWitnessCap) witnesses.push_back(std::move(w));
}

AxiomReport frobenius_axiom_check(const FrobeniusAlgebraData& d, std::uint64_t seed, std::size_t sample_count) {
  AxiomReport rep;
  const std::size_t m = d.m;

  // unit
  if (d.dim(0) != 1 || d.pieces[0].basis()[0].total_degree() != 0) {
    rep.unit.fail("R(f)_0 is not spanned by 1");
  } else {
    for (std::size_t b = 0; b < m; ++b) {
      const StructureTensor& t = d.tensors.at({0, b});
      for (std::size_t j = 0; j < t.cols; ++j) {
        ++rep.unit.checked;
        const SparseRow& e = t.at(0, j);
        if (e.size() != 1 || e[0].first != j || e[0].second != 1)
          rep.unit.fail("1 * e_" + std::to_string(j) + " in degree " + std::to_string(b) + " is not e_" +
                        std::to_string(j));
      }
    }
  }

  // commutativity: a == b by symmetry of the tensor, a < b against a fresh
  // reduction of the reversed product
  for (const auto& [key, t] : d.tensors) {
    const auto [a, b] = key;
    const QuotientBasis& target = d.pieces[a + b];
    for (std::size_t i = 0; i < t.rows; ++i) {
      for (std::size_t j = 0; j < t.cols; ++j) {
        ++rep.commutativity.checked;
        SparseRow other = a == b ? t.at(j, i) : target.normal_form(d.pieces[b].basis()[j] * d.pieces[a].basis()[i]);
        if (other != t.at(i, j))
          rep.commutativity.fail("e_" + std::to_string(i) + " (deg " + std::to_string(a) + ") and e_" +
                                 std::to_string(j) + " (deg " + std::to_string(b) + ") do not commute");
      }
    }
  }

  // associativity and invariance
  std::size_t total = 0;
  for (std::size_t a = 0; a < m; ++a) total += d.dim(a);
  const bool exhaustive = total * total * total <= kExhaustiveTriples;
  rep.exhaustive_associativity = exhaustive;

  auto check_assoc = [&](const Element& u, const Element& v, const Element& w) {
    ++rep.associativity.checked;
    Element left = d.multiply(d.multiply(u, v), w);
    Element right = d.multiply(u, d.multiply(v, w));
    if (left != right)
      rep.associativity.fail("(uv)w != u(vw) for u = " + describe(u) + ", v = " + describe(v) + ", w = " + describe(w) +
                             ": " + coords_to_string(left.coords) + " vs " + coords_to_string(right.coords));
  };
  auto check_invariance = [&](const Element& u, const Element& v, const Element& w) {
    ++rep.invariance.checked;
    Element uvw = d.multiply(d.multiply(u, v), w);
    Rational lhs = d.socle_trace * uvw.coords[0];
    Polynomial p = d.lift(u) * d.lift(v) * d.lift(w);
    std::vector<Rational> coords = p.is_zero() ? std::vector<Rational>{Rational(0)} : d.pieces[m - 1].normal_form(p);
    Rational rhs = trace(coords, d).value;
    if (lhs != rhs)
      rep.invariance.fail("<uv, w> = " + to_string(lhs) + " but <u, vw> = " + to_string(rhs) + " for u = " + describe(u) +
                          ", v = " + describe(v) + ", w = " + describe(w));
  };

  if (exhaustive) {
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        for (std::size_t c = 0; c < m; ++c)
          for (std::size_t i = 0; i < d.dim(a); ++i)
            for (std::size_t j = 0; j < d.dim(b); ++j)
              for (std::size_t k = 0; k < d.dim(c); ++k) {
                Element u = basis_element(d, a, i), v = basis_element(d, b, j), w = basis_element(d, c, k);
                check_assoc(u, v, w);
                if (a + b + c == m - 1) check_invariance(u, v, w);
              }
  } else {
    std::vector<std::array<std::size_t, 3>> assoc_degrees, inv_degrees;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; a + b < m; ++b)
        for (std::size_t c = 0; a + b + c < m; ++c) {
          assoc_degrees.push_back({a, b, c});
          if (a + b + c == m - 1) inv_degrees.push_back({a, b, c});
        }
    for (std::size_t k = 0; k < sample_count; ++k) {
      std::mt19937_64 rng(sample_seed(seed, k));
      auto da = assoc_degrees[rng() % assoc_degrees.size()];
      Element u = random_element(d, da[0], rng), v = random_element(d, da[1], rng), w = random_element(d, da[2], rng);
      check_assoc(u, v, w);
      auto di = inv_degrees[rng() % inv_degrees.size()];
      Element x = random_element(d, di[0], rng), y = random_element(d, di[1], rng), z = random_element(d, di[2], rng);
      check_invariance(x, y, z);
    }
  }

  // nondegeneracy
  for (std::size_t a = 0; a < m; ++a) {
    ++rep.nondegeneracy.checked;
    const RatMatrix& gm = d.gram[a];
    if (gm.rows() != gm.cols()) {
      rep.nondegeneracy.fail("G_" + std::to_string(a) + " is " + std::to_string(gm.rows()) + "x" +
                             std::to_string(gm.cols()));
      continue;
    }
    std::size_t rk = rank(gm);
    if (rk != gm.rows())
      rep.nondegeneracy.fail("G_" + std::to_string(a) + " has rank " + std::to_string(rk) + " < " +
                             std::to_string(gm.rows()));
  }

  for (const VanishingProducts& vp : d.vanishing) {
    rep.vanishing.checked += vp.checked;
    if (vp.nonzero) rep.vanishing.fail(vp.witness);
  }
  return rep;
}

std::vector<std::size_t> hodge_row(const FrobeniusAlgebraData& d) {
  std::vector<std::size_t> row;
  for (std::size_t a = 0; a < d.m; ++a) row.push_back(d.dim(a));
  return row;
}

}  // namespace lgfrob
