#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lgfrob/jacobian.hpp"
#include "lgfrob/linalg.hpp"

namespace lgfrob {

// Rational multiple of the fixed unit (2 pi i)^{m-1}. The sign
// -(-1)^{m(m-1)/2} is already folded into value.
struct TraceScalar {
  Rational value;
  std::int64_t unit_exponent = 0;

  std::string to_string() const;
  friend bool operator==(const TraceScalar& a, const TraceScalar& b) { return a.value == b.value; }
};

enum class TraceStrategy {
  Generic,            // the single quotient-basis monomial of R0(f)_{m beta}
  ProjectiveHessian,  // z_1...z_r det(d^2 f), standard P^{r-1} fan only
};

std::string to_string(TraceStrategy s);
TraceStrategy parse_trace_strategy(const std::string& name);  // throws InvalidInput

// Homogeneous element of A(f): coordinates over the basis of R(f)_{degree beta}.
// For degree >= m the coordinate vector is empty (the piece vanishes).
struct Element {
  std::size_t degree = 0;
  std::vector<Rational> coords;

  friend bool operator==(const Element&, const Element&) = default;
};

// Products of basis pairs from degrees a <= b, flattened row-major.
struct StructureTensor {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SparseRow> entries;

  const SparseRow& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

// Basis products landing in degree p = a + b >= m. A product is certified
// zero when a monomial of S_{m beta} divides it (R(f)_{m beta} = 0 puts all of
// S_{m beta} in J(f)), otherwise by reduction in R(f)_{p beta}.
struct VanishingProducts {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t checked = 0;
  std::size_t nonzero = 0;
  std::string witness;
};

struct AlgebraOptions {
  PieceOptions pieces;
  std::size_t threads = 1;
};

struct FrobeniusAlgebraData {
  std::size_t m = 0;
  TraceStrategy strategy = TraceStrategy::Generic;
  std::vector<std::string> names;
  std::vector<QuotientBasis> pieces;       // R(f)_{a beta}, a = 0..m-1
  QuotientBasis euler_piece;               // R0(f)_{m beta}
  // R(f)_{p beta} for p >= m: always p = m, higher p only when some
  // product could not be certified zero by a divisor in degree m beta.
  std::map<std::size_t, QuotientBasis> high_pieces;
  std::map<std::pair<std::size_t, std::size_t>, StructureTensor> tensors;
  std::vector<VanishingProducts> vanishing;

  Monomial socle_generator;        // basis of R(f)_{(m-1) beta}
  Monomial euler_basis_monomial;   // basis of R0(f)_{m beta}
  Rational generator_coordinate;   // strategy generator in that basis
  Integer normalized_volume;       // m! Vol(Delta)
  Rational socle_trace;            // trace of the socle basis element
  std::vector<RatMatrix> gram;     // G_a, rational parts

  std::size_t dim(std::size_t a) const { return a < m ? pieces[a].dim() : 0; }
  std::int64_t unit_exponent() const { return static_cast<std::int64_t>(m) - 1; }
  // -(-1)^{m(m-1)/2}
  int trace_sign() const;

  // u * v via the structure constants.
  Element multiply(const Element& u, const Element& v) const;
  // u * v via polynomial lifts and a fresh normal form.
  Element multiply_direct(const Element& u, const Element& v) const;
  Polynomial lift(const Element& u) const;
};

// Throws SocleNotOneDimensional, HessianGeneratorZero, StrategyNotAdmissible.
FrobeniusAlgebraData build_algebra(const JacobianSystem& sys, TraceStrategy strategy,
                                   const AlgebraOptions& options = {});

// Lifts U, multiplies by z_1...z_r and reads the coordinate in R0(f)_{m beta}
// against the strategy generator. Throws DegreeMismatch.
TraceScalar trace(const std::vector<Rational>& u, const FrobeniusAlgebraData& d);

struct GramMatrix {
  RatMatrix values;  // rational parts
  std::int64_t unit_exponent = 0;
};

// (G_a)_{ij} = Tr(e_i e_j) with e_i from degree a and e_j from degree m-1-a.
GramMatrix pairing_gram(const FrobeniusAlgebraData& d, std::size_t a);

// (-1)^b u v for u of degree a, v of degree b, a + b = m - 1.
Element mul_twisted(const Element& u, const Element& v, const FrobeniusAlgebraData& d);

struct AxiomResult {
  bool pass = true;
  std::size_t checked = 0;
  std::vector<std::string> witnesses;  // capped

  void fail(std::string w);
};

struct AxiomReport {
  AxiomResult unit;
  AxiomResult commutativity;
  AxiomResult associativity;
  AxiomResult invariance;
  AxiomResult nondegeneracy;
  AxiomResult vanishing;  // products with a + b >= m reduce to zero
  bool exhaustive_associativity = false;

  bool all_pass() const {
    return unit.pass && commutativity.pass && associativity.pass && invariance.pass && nondegeneracy.pass &&
           vanishing.pass;
  }
};

// Associativity runs over all basis triples when there are at most 10^4 of
// them and over `sample_count` seeded random triples otherwise. Sample k
// depends only on (seed, k).
AxiomReport frobenius_axiom_check(const FrobeniusAlgebraData& d, std::uint64_t seed, std::size_t sample_count);

// dim R(f)_{a beta}, a = 0..m-1: the predicted primitive Hodge numbers
// h^{m-1-a,a}_pr of the hypersurface.
std::vector<std::size_t> hodge_row(const FrobeniusAlgebraData& d);

// Determinant of the Hessian matrix of f.
Polynomial hessian_determinant(const Polynomial& f);

// Seeded stream for sample k: SplitMix64 over (seed, k).
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t k);

}  // namespace lgfrob
