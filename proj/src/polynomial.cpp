#include "lgfrob/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <sstream>

#include "lgfrob/errors.hpp"

namespace lgfrob {

namespace {

constexpr std::int64_t kMaxExponent = std::numeric_limits<std::int32_t>::max();

std::int32_t checked_exponent(std::int64_t e) {
  if (e < 0 || e > kMaxExponent) throw InvalidInput("exponent out of range");
  return static_cast<std::int32_t>(e);
}

}  // namespace

Monomial::Monomial(std::vector<std::int32_t> exps) : exps_(std::move(exps)) {
  for (auto e : exps_)
    if (e < 0) throw InvalidInput("negative exponent");
}

Monomial Monomial::variable(std::size_t nvars, std::size_t i) {
  Monomial m(nvars);
  m.exps_.at(i) = 1;
  return m;
}

std::int64_t Monomial::total_degree() const {
  std::int64_t s = 0;
  for (auto e : exps_) s += e;
  return s;
}

bool Monomial::divides(const Monomial& other) const {
  assert(nvars() == other.nvars());
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  assert(a.nvars() == b.nvars());
  Monomial out(a.nvars());
  for (std::size_t i = 0; i < a.exps_.size(); ++i)
    out.exps_[i] = checked_exponent(std::int64_t{a.exps_[i]} + b.exps_[i]);
  return out;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = a.total_degree();
  const auto db = b.total_degree();
  if (da != db) return da > db;
  const auto ea = a.exponents();
  const auto eb = b.exponents();
  return std::lexicographical_compare(eb.begin(), eb.end(), ea.begin(), ea.end());
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto e : m.exponents()) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  return term(Monomial::variable(nvars, i));
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p(m.nvars());
  p.add_term(m, c);
  return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  assert(m.nvars() == nvars_);
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  assert(o.nvars_ == nvars_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  if (degree_ != o.degree_) degree_.reset();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  assert(o.nvars_ == nvars_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  if (degree_ != o.degree_) degree_.reset();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  assert(a.nvars_ == b.nvars_);
  Polynomial out(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  if (a.degree_ && b.degree_ && !out.is_zero()) {
    ClassElement d(a.degree_->size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = (*a.degree_)[k] + (*b.degree_)[k];
    out.degree_ = std::move(d);
  }
  return out;
}

Polynomial operator*(const Polynomial& a, const Monomial& m) {
  Polynomial out(a.nvars_);
  for (const auto& [ma, ca] : a.terms_) out.terms_.emplace_hint(out.terms_.end(), ma * m, ca);
  return out;
}

Polynomial pow(const Polynomial& p, std::uint32_t e) {
  Polynomial result = Polynomial::constant(p.nvars(), 1);
  Polynomial base = p;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
  Polynomial out(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    const std::int32_t e = m[var];
    if (e == 0) continue;
    std::vector<std::int32_t> exps(m.exponents().begin(), m.exponents().end());
    exps[var] -= 1;
    out.add_term(Monomial(std::move(exps)), c * e);
  }
  return out;
}

Polynomial restrict_to_zero(const Polynomial& p, std::span<const std::size_t> vars) {
  Polynomial out(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    const bool killed = std::any_of(vars.begin(), vars.end(), [&](std::size_t v) { return m[v] > 0; });
    if (!killed) out.add_term(m, c);
  }
  out.set_degree(out.is_zero() ? std::nullopt : p.degree());
  return out;
}

std::string to_string(const Monomial& m, std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const Polynomial& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    const bool constant = m.total_degree() == 0;
    if (constant) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += to_string(m, names);
    } else {
      out += to_string(mag) + "*" + to_string(m, names);
    }
  }
  return out;
}

}  // namespace lgfrob
