#include "lgfrob/jacobian.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "lgfrob/errors.hpp"

namespace lgfrob {

std::string to_string(Ideal ideal) { return ideal == Ideal::Jacobian ? "J" : "J0"; }

namespace {

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("z" + std::to_string(i + 1));
  return out;
}

std::string format_class(const ClassElement& c) {
  std::string out = "(";
  for (std::size_t k = 0; k < c.size(); ++k) out += (k ? "," : "") + std::to_string(c[k]);
  return out + ")";
}

}  // namespace

JacobianSystem::JacobianSystem(Polynomial f, const FanData& fan, GradingMap grading, std::vector<std::string> names)
    : f_(std::move(f)), fan_(fan), grading_(std::move(grading)), names_(std::move(names)) {
  fan_.normalize();
  if (names_.size() != f_.nvars()) names_ = default_names(f_.nvars());
  const ClassElement deg = check_homogeneous(f_, grading_, names_);
  if (deg != grading_.beta)
    throw DegreeMismatch("deg f = " + format_class(deg) + " but the anticanonical class is " +
                         format_class(grading_.beta));
  for (std::size_t i = 0; i < f_.nvars(); ++i) {
    Polynomial fi = partial_derivative(f_, i, grading_);
    Polynomial zi_fi = Polynomial::variable(f_.nvars(), i) * fi;
    if (!zi_fi.is_zero()) zi_fi.set_degree(grading_.beta);
    partials_.push_back(std::move(fi));
    euler_.push_back(std::move(zi_fi));
  }
}

std::optional<std::size_t> QuotientBasis::column_of(const Monomial& m) const {
  const auto it = column_.find(m);
  if (it == column_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> QuotientBasis::basis_index(const Monomial& m) const {
  const auto col = column_of(m);
  if (!col || basis_of_column_[*col] < 0) return std::nullopt;
  return static_cast<std::size_t>(basis_of_column_[*col]);
}

SparseRow QuotientBasis::normal_form(const Monomial& m) const {
  const auto col = column_of(m);
  if (!col) throw DegreeMismatch("monomial does not lie in the graded piece " + format_class(degree_));
  const std::int64_t b = basis_of_column_[*col];
  if (b >= 0) return {{static_cast<std::uint32_t>(b), Rational(1)}};
  const auto it = reduction_.find(static_cast<std::uint32_t>(*col));
  return it == reduction_.end() ? SparseRow{} : it->second;
}

std::vector<Rational> QuotientBasis::normal_form(const Polynomial& p) const {
  std::vector<Rational> coords(basis_.size());
  for (const auto& [m, c] : p.terms()) {
    const auto col = column_of(m);
    if (!col) throw DegreeMismatch("polynomial does not lie in the graded piece " + format_class(degree_));
    const std::int64_t b = basis_of_column_[*col];
    if (b >= 0) {
      coords[static_cast<std::size_t>(b)] += c;
      continue;
    }
    const auto it = reduction_.find(static_cast<std::uint32_t>(*col));
    if (it == reduction_.end()) continue;
    for (const auto& [idx, x] : it->second) coords[idx] += c * x;
  }
  return coords;
}

Polynomial QuotientBasis::lift(std::span<const Rational> coords) const {
  if (coords.size() != basis_.size()) throw DegreeMismatch("coordinate vector has the wrong length");
  Polynomial p(nvars_);
  for (std::size_t k = 0; k < coords.size(); ++k) p.add_term(basis_[k], coords[k]);
  if (!p.is_zero()) p.set_degree(degree_);
  return p;
}

QuotientBasis graded_piece(const JacobianSystem& sys, Ideal ideal, const ClassElement& alpha,
                           const PieceOptions& options) {
  const GradingMap& g = sys.grading();
  QuotientBasis q;
  q.degree_ = alpha;
  q.ideal_ = ideal;
  q.nvars_ = sys.nvars();
  q.ambient_ = monomial_basis(g, sys.fan(), alpha);
  const std::size_t ncols = q.ambient_.size();
  q.column_.reserve(ncols);
  for (std::size_t c = 0; c < ncols; ++c) q.column_.emplace(q.ambient_[c], static_cast<std::uint32_t>(c));

  // Relation rows g * x^v for every generator g and cofactor monomial x^v.
  std::vector<SparseRow> rows;
  for (const auto& gen : sys.generators(ideal)) {
    if (gen.is_zero()) continue;
    const ClassElement cofactor_degree = alpha - *gen.degree();
    for (const auto& cof : monomial_basis(g, sys.fan(), cofactor_degree)) {
      SparseRow row;
      row.reserve(gen.size());
      for (const auto& [m, c] : gen.terms()) {
        const auto it = q.column_.find(m * cof);
        if (it == q.column_.end()) throw DegreeMismatch("relation leaves the graded piece");
        row.emplace_back(it->second, c);
      }
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      rows.push_back(std::move(row));
    }
  }
  q.relation_count_ = rows.size();
  q.basis_of_column_.assign(ncols, -1);

  if (options.modular_prefilter && ncols > 0) {
    ModularRank mr(ncols);
    for (const auto& row : rows) {
      mr.add_row(row);
      if (mr.rank() == ncols || !mr.conclusive()) break;
    }
    // rank mod p never exceeds the rank over Q, so hitting the column count
    // certifies that the quotient is zero.
    if (mr.conclusive() && mr.rank() == ncols) {
      q.prefiltered_ = true;
      q.rank_ = ncols;
      q.pivots_.resize(ncols);
      for (std::size_t c = 0; c < ncols; ++c) q.pivots_[c] = static_cast<std::uint32_t>(c);
      return q;
    }
  }

  SparseEchelon ech(ncols);
  for (auto& row : rows) {
    ech.add_row(std::move(row));
    if (ech.rank() == ncols) break;
  }
  rows.clear();
  auto result = std::move(ech).finish();
  q.rank_ = result.pivots.size();
  q.pivots_ = result.pivots;
  for (auto c : q.pivots_) q.basis_of_column_[c] = -2;
  for (std::size_t c = 0; c < ncols; ++c) {
    if (q.basis_of_column_[c] == -2) continue;
    q.basis_of_column_[c] = static_cast<std::int64_t>(q.basis_.size());
    q.basis_.push_back(q.ambient_[c]);
  }
  for (std::size_t k = 0; k < result.pivots.size(); ++k) {
    const std::uint32_t pivot = result.pivots[k];
    q.basis_of_column_[pivot] = -1;
    SparseRow nf;
    for (const auto& [col, x] : result.rows[k]) {
      if (col == pivot) continue;
      nf.emplace_back(static_cast<std::uint32_t>(q.basis_of_column_[col]), Rational(-x));
    }
    if (!nf.empty()) q.reduction_.emplace(pivot, std::move(nf));
  }
  return q;
}

std::vector<QuotientBasis> graded_pieces(const JacobianSystem& sys, const std::vector<PieceRequest>& requests,
                                         const PieceOptions& options, std::size_t threads) {
  std::vector<QuotientBasis> out(requests.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, requests.size()));
  if (workers == 1) {
    for (std::size_t k = 0; k < requests.size(); ++k)
      out[k] = graded_piece(sys, requests[k].ideal, requests[k].degree, options);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < requests.size(); k = next++) {
        try {
          out[k] = graded_piece(sys, requests[k].ideal, requests[k].degree, options);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

std::size_t dim_R(const JacobianSystem& sys, std::int64_t a, const PieceOptions& options) {
  return graded_piece(sys, Ideal::Jacobian, sys.grading().multiple_of_beta(a), options).dim();
}

MacaulayCheck macaulay_vanishing_check(const JacobianSystem& sys, std::int64_t m, std::int64_t extra,
                                       const PieceOptions& options) {
  MacaulayCheck out;
  for (std::int64_t p = m; p <= m + extra; ++p) {
    const std::size_t d = dim_R(sys, p, options);
    out.dims.emplace_back(p, d);
    if (d != 0) out.pass = false;
  }
  return out;
}

SocleCertificate socle_certificates(const JacobianSystem& sys, std::int64_t m, const PieceOptions& options) {
  SocleCertificate out;
  const auto top = graded_piece(sys, Ideal::Jacobian, sys.grading().multiple_of_beta(m - 1), options);
  const auto euler = graded_piece(sys, Ideal::Euler, sys.grading().multiple_of_beta(m), options);
  out.top_dim = top.dim();
  out.euler_dim = euler.dim();
  out.top_generators = top.basis();
  out.euler_generators = euler.basis();
  return out;
}

EulerCheck euler_membership_check(const JacobianSystem& sys) {
  const GradingMap& g = sys.grading();
  // lambda . beta = 1 over Q, then clear denominators.
  RatMatrix a(1, g.rank);
  for (std::size_t k = 0; k < g.rank; ++k) a(0, k) = Rational(g.beta[k]);
  const std::vector<Rational> one{Rational(1)};
  const auto sol = g.rank ? solve_rational(a, one) : std::nullopt;
  if (!sol) throw NoFunctional("no functional on the class group is nonzero on beta");
  Integer den = 1;
  for (const auto& x : *sol) den = lcm(den, Integer(x.get_den()));
  EulerCheck out;
  for (const auto& x : *sol) out.functional.push_back(to_int64(Integer(x * den)));
  for (std::size_t k = 0; k < g.rank; ++k) out.lambda_beta += out.functional[k] * g.beta[k];

  Polynomial lhs(sys.nvars());
  for (std::size_t i = 0; i < sys.nvars(); ++i) {
    std::int64_t weight = 0;
    for (std::size_t k = 0; k < g.rank; ++k) weight += out.functional[k] * g.degrees[i][k];
    lhs += sys.euler_generators()[i] * Rational(weight);
  }
  out.pass = lhs == sys.f() * Rational(out.lambda_beta);
  return out;
}

std::vector<ContainmentResult> crit_containment_check(const JacobianSystem& sys,
                                                      const std::vector<std::vector<std::size_t>>& zero_sets) {
  std::vector<ContainmentResult> out;
  for (const auto& vars : zero_sets) {
    ContainmentResult res;
    res.zero_vars = vars;
    res.pass = true;
    for (std::size_t i = 0; i < sys.nvars(); ++i) {
      const Polynomial rest = restrict_to_zero(sys.partials()[i], vars);
      if (!rest.is_zero()) {
        res.pass = false;
        res.witness = "d f / d " + sys.names()[i] + " restricts to " + to_string(rest, sys.names());
        break;
      }
    }
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace lgfrob
