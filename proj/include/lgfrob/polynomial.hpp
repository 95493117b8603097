#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lgfrob/rational.hpp"

namespace lgfrob {

// Element of the (free) class group Z^k.
using ClassElement = std::vector<std::int64_t>;

// Exponent vector z^u, one entry per variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::int32_t> exps);

  static Monomial variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const noexcept { return exps_.size(); }
  std::int32_t operator[](std::size_t i) const { return exps_[i]; }
  std::span<const std::int32_t> exponents() const noexcept { return exps_; }
  std::int64_t total_degree() const;

  bool divides(const Monomial& other) const;
  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::int32_t> exps_;
};

// Graded-lexicographic order: higher total degree first, then the exponent
// vector that is lexicographically larger in the declared variable order
// (so x^3 precedes x^2*y precedes y^3). "Least" means first in this order.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

// Sparse polynomial over Q: a term map with no zero coefficients, plus an
// optional class-group degree stamped by check_homogeneous().
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial term(const Monomial& m, const Rational& c = 1);

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);

  const std::optional<ClassElement>& degree() const noexcept { return degree_; }
  void set_degree(std::optional<ClassElement> d) { degree_ = std::move(d); }

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Monomial& m);

  // Equality of term maps; degree stamps are metadata and not compared.
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t nvars_;
  TermMap terms_;
  std::optional<ClassElement> degree_;
};

Polynomial pow(const Polynomial& p, std::uint32_t e);

Polynomial partial_derivative(const Polynomial& p, std::size_t var);

// Substitutes 0 for every listed variable.
Polynomial restrict_to_zero(const Polynomial& p, std::span<const std::size_t> vars);

// Canonical text form, terms in MonomialOrder; parse_polynomial() inverts it.
std::string to_string(const Polynomial& p, std::span<const std::string> names);
std::string to_string(const Monomial& m, std::span<const std::string> names);

}  // namespace lgfrob
