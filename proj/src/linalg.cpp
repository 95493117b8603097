#include "lgfrob/linalg.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

namespace lgfrob {

RrefResult rref(RatMatrix m) {
  RrefResult out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    m.swap_rows(r, p);
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational factor = -m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) += factor * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const RatMatrix& m) { return rref(m).rank; }

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  RatMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      a.swap_rows(k, p);
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational factor = -a(i, k) / a(k, k);
      a.add_row(i, k, factor);
    }
  }
  return det;
}

std::optional<std::vector<Rational>> solve_rational(const RatMatrix& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_rational: size mismatch");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const RrefResult r = rref(std::move(aug));
  if (!r.pivots.empty() && r.pivots.back() == a.cols()) return std::nullopt;
  std::vector<Rational> x(a.cols());
  for (std::size_t k = 0; k < r.rank; ++k) x[r.pivots[k]] = r.reduced(k, a.cols());
  return x;
}

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) out.push_back(D(i, i));
  return out;
}

namespace {

// Floor division for mpz.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  SmithForm s{IntMatrix::identity(rows), a, IntMatrix::identity(cols)};
  IntMatrix& D = s.D;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block goes to (t, t).
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (D(i, j) != 0 && (bi == rows || abs(D(i, j)) < abs(D(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == rows) return s;
      D.swap_rows(t, bi);
      s.U.swap_rows(t, bi);
      D.swap_cols(t, bj);
      s.V.swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (D(i, t) == 0) continue;
        const Integer q = floor_div(D(i, t), D(t, t));
        D.add_row(i, t, -q);
        s.U.add_row(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (D(t, j) == 0) continue;
        const Integer q = floor_div(D(t, j), D(t, t));
        D.add_col(j, t, -q);
        s.V.add_col(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row t and start over.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (D(i, j) % D(t, t) != 0) {
            D.add_row(t, i, 1);
            s.U.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      s.U.negate_row(t);
    }
  }
  return s;
}

HermiteForm hermite_normal_form(const IntMatrix& a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  HermiteForm h{a, IntMatrix::identity(rows)};
  IntMatrix& H = h.H;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (H(i, c) != 0 && (best == rows || abs(H(i, c)) < abs(H(best, c)))) best = i;
      if (best == rows) break;
      H.swap_rows(r, best);
      h.T.swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (H(i, c) == 0) continue;
        const Integer q = floor_div(H(i, c), H(r, c));
        H.add_row(i, r, -q);
        h.T.add_row(i, r, -q);
        if (H(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) {
      H.negate_row(r);
      h.T.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const Integer q = floor_div(H(i, c), H(r, c));
      if (q == 0) continue;
      H.add_row(i, r, -q);
      h.T.add_row(i, r, -q);
    }
    ++r;
  }
  return h;
}

std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a, std::span<const Integer> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_integer: size mismatch");
  const SmithForm s = smith_normal_form(a);
  std::vector<Integer> c(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.rows(); ++k) c[i] += s.U(i, k) * b[k];
  std::vector<Integer> y(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Integer d = (i < a.cols()) ? s.D(i, i) : Integer(0);
    if (d == 0) {
      if (c[i] != 0) return std::nullopt;
      continue;
    }
    if (c[i] % d != 0) return std::nullopt;
    y[i] = c[i] / d;
  }
  std::vector<Integer> u(a.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) u[i] += s.V(i, k) * y[k];
  return u;
}

// ---------------------------------------------------------------------------
// Modular rank

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

static_assert(sizeof(unsigned long) == sizeof(u64));

u64 mod_of(const Integer& z, u64 p) { return mpz_fdiv_ui(z.get_mpz_t(), p); }

}  // namespace

ModularRank::ModularRank(std::size_t cols, std::uint64_t prime)
    : cols_(cols), p_(prime), pivot_of_col_(cols, -1), acc_(cols, 0), touched_(cols, 0) {}

void ModularRank::add_row(const SparseRow& row) {
  if (rank_ == cols_) return;
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;
  for (const auto& [col, q] : row) {
    const u64 den = mod_of(q.get_den(), p_);
    if (den == 0) {
      conclusive_ = false;
      return;
    }
    acc_[col] = mulmod(mod_of(q.get_num(), p_), powmod(den, p_ - 2, p_), p_);
    touched_[col] = 1;
    heap.push(col);
  }
  std::vector<std::pair<std::uint32_t, u64>> out;
  while (!heap.empty()) {
    const std::uint32_t c = heap.top();
    heap.pop();
    if (!touched_[c]) continue;
    touched_[c] = 0;
    const u64 v = acc_[c];
    acc_[c] = 0;
    if (v == 0) continue;
    const std::int64_t piv = pivot_of_col_[c];
    if (piv < 0) {
      out.emplace_back(c, v);
      continue;
    }
    for (const auto& [j, x] : pivot_rows_[static_cast<std::size_t>(piv)]) {
      if (j == c) continue;
      if (!touched_[j]) {
        touched_[j] = 1;
        heap.push(j);
      }
      acc_[j] = (acc_[j] + p_ - mulmod(v, x, p_)) % p_;
    }
  }
  if (out.empty()) return;
  const u64 inv = powmod(out.front().second, p_ - 2, p_);
  for (auto& [j, x] : out) x = mulmod(x, inv, p_);
  pivot_of_col_[out.front().first] = static_cast<std::int64_t>(pivot_rows_.size());
  pivot_rows_.push_back(std::move(out));
  ++rank_;
}

// ---------------------------------------------------------------------------
// Exact sparse echelon

SparseEchelon::SparseEchelon(std::size_t cols)
    : cols_(cols), pivot_of_col_(cols, -1), acc_(cols), touched_(cols, 0) {}

SparseRow SparseEchelon::reduce(const SparseRow& row) {
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;
  for (const auto& [col, q] : row) {
    acc_[col] = q;
    touched_[col] = 1;
    heap.push(col);
  }
  SparseRow out;
  Rational v;
  while (!heap.empty()) {
    const std::uint32_t c = heap.top();
    heap.pop();
    if (!touched_[c]) continue;
    touched_[c] = 0;
    if (acc_[c] == 0) continue;
    swap(v, acc_[c]);
    acc_[c] = 0;
    const std::int64_t piv = pivot_of_col_[c];
    if (piv < 0) {
      out.emplace_back(c, v);
      continue;
    }
    for (const auto& [j, x] : rows_[static_cast<std::size_t>(piv)]) {
      if (j == c) continue;
      if (!touched_[j]) {
        touched_[j] = 1;
        heap.push(j);
      }
      acc_[j] -= v * x;
    }
  }
  return out;
}

void SparseEchelon::add_row(SparseRow row) {
  if (rows_.size() == cols_) return;
  SparseRow out = reduce(row);
  if (out.empty()) return;
  const Rational inv = 1 / out.front().second;
  for (auto& [j, x] : out) x *= inv;
  pivot_of_col_[out.front().first] = static_cast<std::int64_t>(rows_.size());
  rows_.push_back(std::move(out));
}

SparseEchelon::Result SparseEchelon::finish() && {
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rows_[a].front().first < rows_[b].front().first; });
  // Back substitution from the rightmost pivot: rows already visited hold no
  // pivot column other than their own.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    SparseRow& row = rows_[*it];
    const auto lead = row.front();
    const std::int64_t self = pivot_of_col_[lead.first];
    pivot_of_col_[lead.first] = -1;
    SparseRow tail(row.begin() + 1, row.end());
    SparseRow reduced = reduce(tail);
    pivot_of_col_[lead.first] = self;
    row.clear();
    row.push_back(lead);
    row.insert(row.end(), reduced.begin(), reduced.end());
  }
  Result result;
  for (std::size_t k : order) {
    result.pivots.push_back(rows_[k].front().first);
    result.rows.push_back(std::move(rows_[k]));
  }
  return result;
}

}  // namespace lgfrob
