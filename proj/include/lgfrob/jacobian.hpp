#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lgfrob/grading.hpp"
#include "lgfrob/linalg.hpp"
#include "lgfrob/polynomial.hpp"
#include "lgfrob/toric.hpp"

namespace lgfrob {

enum class Ideal { Jacobian, Euler };  // J(f) = <f_i>, J0(f) = <z_i f_i>

std::string to_string(Ideal ideal);

// f of degree beta together with its partials f_i and the Euler generators
// z_i f_i, all stamped with their class-group degrees.
class JacobianSystem {
 public:
  // Throws NotHomogeneous, or DegreeMismatch when deg f != beta.
  JacobianSystem(Polynomial f, const FanData& fan, GradingMap grading, std::vector<std::string> names = {});

  const Polynomial& f() const noexcept { return f_; }
  const std::vector<Polynomial>& partials() const noexcept { return partials_; }
  const std::vector<Polynomial>& euler_generators() const noexcept { return euler_; }
  const std::vector<Polynomial>& generators(Ideal ideal) const {
    return ideal == Ideal::Jacobian ? partials_ : euler_;
  }
  const FanData& fan() const noexcept { return fan_; }
  const GradingMap& grading() const noexcept { return grading_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t nvars() const noexcept { return f_.nvars(); }
  std::size_t dim() const noexcept { return fan_.dim; }

 private:
  Polynomial f_;
  FanData fan_;
  GradingMap grading_;
  std::vector<std::string> names_;
  std::vector<Polynomial> partials_;
  std::vector<Polynomial> euler_;
};

struct PieceOptions {
  bool modular_prefilter = true;
};

// One graded piece S_alpha / I_alpha. The ambient monomials are the columns of
// the relation matrix in MonomialOrder; the quotient basis is the set of
// non-pivot monomials of its reduced echelon form.
class QuotientBasis {
 public:
  QuotientBasis() = default;

  const ClassElement& degree() const noexcept { return degree_; }
  Ideal ideal() const noexcept { return ideal_; }
  const std::vector<Monomial>& ambient() const noexcept { return ambient_; }
  const std::vector<Monomial>& basis() const noexcept { return basis_; }
  const std::vector<std::uint32_t>& pivots() const noexcept { return pivots_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  std::size_t rank() const noexcept { return rank_; }
  std::size_t relation_count() const noexcept { return relation_count_; }
  // True when the modular prefilter certified full column rank and the exact
  // elimination was skipped.
  bool prefiltered() const noexcept { return prefiltered_; }

  // Coordinates of [p] against basis(). Throws DegreeMismatch when p has a
  // monomial outside this piece.
  std::vector<Rational> normal_form(const Polynomial& p) const;
  // Coordinates of a single monomial as a sparse vector over basis indices.
  SparseRow normal_form(const Monomial& m) const;
  std::optional<std::size_t> column_of(const Monomial& m) const;
  std::optional<std::size_t> basis_index(const Monomial& m) const;

  // Polynomial with the given basis coordinates.
  Polynomial lift(std::span<const Rational> coords) const;

 private:
  friend QuotientBasis graded_piece(const JacobianSystem&, Ideal, const ClassElement&, const PieceOptions&);

  ClassElement degree_;
  Ideal ideal_ = Ideal::Jacobian;
  std::size_t nvars_ = 0;
  std::vector<Monomial> ambient_;
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> column_;
  std::vector<std::uint32_t> pivots_;
  std::vector<Monomial> basis_;
  // Per ambient column: basis index, or -1 for a pivot column.
  std::vector<std::int64_t> basis_of_column_;
  // Per pivot column: its normal form over basis indices.
  std::unordered_map<std::uint32_t, SparseRow> reduction_;
  std::size_t rank_ = 0;
  std::size_t relation_count_ = 0;
  bool prefiltered_ = false;
};

QuotientBasis graded_piece(const JacobianSystem& sys, Ideal ideal, const ClassElement& alpha,
                           const PieceOptions& options = {});

struct PieceRequest {
  Ideal ideal = Ideal::Jacobian;
  ClassElement degree;
};

// Independent pieces computed on up to `threads` worker threads; results are
// returned in request order whatever the thread count.
std::vector<QuotientBasis> graded_pieces(const JacobianSystem& sys, const std::vector<PieceRequest>& requests,
                                         const PieceOptions& options = {}, std::size_t threads = 1);

// dim R(f)_{a beta}
std::size_t dim_R(const JacobianSystem& sys, std::int64_t a, const PieceOptions& options = {});

struct MacaulayCheck {
  bool pass = true;
  std::vector<std::pair<std::int64_t, std::size_t>> dims;  // (p, dim R(f)_{p beta})
};

// Checks R(f)_{p beta} = 0 for p = m, ..., m + extra.
MacaulayCheck macaulay_vanishing_check(const JacobianSystem& sys, std::int64_t m, std::int64_t extra = 1,
                                       const PieceOptions& options = {});

struct SocleCertificate {
  std::size_t top_dim = 0;    // dim R(f)_{(m-1) beta}
  std::size_t euler_dim = 0;  // dim R0(f)_{m beta}
  std::vector<Monomial> top_generators;
  std::vector<Monomial> euler_generators;
  bool consistent() const noexcept { return top_dim == 1 && euler_dim == 1; }
};

SocleCertificate socle_certificates(const JacobianSystem& sys, std::int64_t m, const PieceOptions& options = {});

struct EulerCheck {
  bool pass = false;
  ClassElement functional;  // lambda on the class group
  std::int64_t lambda_beta = 0;
};

// Finds an integer functional lambda with lambda(beta) != 0 and checks
// sum_i lambda(deg z_i) z_i f_i == lambda(beta) f exactly. Throws NoFunctional.
EulerCheck euler_membership_check(const JacobianSystem& sys);

struct ContainmentResult {
  std::vector<std::size_t> zero_vars;
  bool pass = false;
  std::string witness;  // first partial that survives the restriction
};

std::vector<ContainmentResult> crit_containment_check(const JacobianSystem& sys,
                                                      const std::vector<std::vector<std::size_t>>& zero_sets);

}  // namespace lgfrob
