#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lgfrob/matrix.hpp"

namespace lgfrob {

struct RrefResult {
  RatMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

// Reduced row echelon form over Q. Pivots are taken column by column from the
// left; within a column the lowest remaining row index wins.
RrefResult rref(RatMatrix m);

std::size_t rank(const RatMatrix& m);

// Bareiss fraction-free elimination.
Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);

// One solution of A x = b over Q, or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_rational(const RatMatrix& a, std::span<const Rational> b);

// U * A * V == D, D diagonal with nonnegative entries d_1 | d_2 | ... and U, V
// unimodular.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::vector<Integer> invariant_factors() const;  // nonzero diagonal entries
};

SmithForm smith_normal_form(const IntMatrix& a);

// Row-style Hermite normal form: H = T * A with T unimodular, pivots strictly
// moving right, each pivot positive and the entries above it reduced into
// [0, pivot). Zero rows sink to the bottom.
struct HermiteForm {
  IntMatrix H;
  IntMatrix T;
};

HermiteForm hermite_normal_form(const IntMatrix& a);

// Integer solution of A u = b decided through the Smith form, or nullopt when
// b is not in the integer image of A.
std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a, std::span<const Integer> b);

// Sparse row: strictly increasing column indices, no stored zeros.
using SparseRow = std::vector<std::pair<std::uint32_t, Rational>>;

// Prime just below 2^62 used by the modular rank prefilter.
inline constexpr std::uint64_t kPrefilterPrime = 4611686018427387847ULL;

// Incremental rank of sparse rows reduced modulo a prime. Rows whose
// denominators vanish modulo the prime make the filter inconclusive.
class ModularRank {
 public:
  explicit ModularRank(std::size_t cols, std::uint64_t prime = kPrefilterPrime);

  void add_row(const SparseRow& row);
  std::size_t rank() const noexcept { return rank_; }
  std::size_t cols() const noexcept { return cols_; }
  // False once a denominator divisible by the prime was seen.
  bool conclusive() const noexcept { return conclusive_; }

 private:
  std::size_t cols_;
  std::uint64_t p_;
  std::size_t rank_ = 0;
  bool conclusive_ = true;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> pivot_rows_;
  std::vector<std::int64_t> pivot_of_col_;
  std::vector<std::uint64_t> acc_;
  std::vector<char> touched_;
};

// Incremental sparse Gaussian elimination over Q. Rows may arrive in any
// order; finish() returns the unique reduced row echelon form of their span
// (pivot rows sorted by pivot column, leading coefficient 1).
class SparseEchelon {
 public:
  explicit SparseEchelon(std::size_t cols);

  void add_row(SparseRow row);
  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  struct Result {
    std::vector<std::uint32_t> pivots;
    std::vector<SparseRow> rows;  // rows[k] has its pivot at pivots[k]
  };
  Result finish() &&;

 private:
  SparseRow reduce(const SparseRow& row);

  std::size_t cols_;
  std::vector<SparseRow> rows_;
  std::vector<std::int64_t> pivot_of_col_;
  std::vector<Rational> acc_;
  std::vector<char> touched_;
};

}  // namespace lgfrob
