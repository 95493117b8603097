#include "lgfrob/grading.hpp"

#include <cassert>

#include "lgfrob/errors.hpp"

namespace lgfrob {

ClassElement operator+(const ClassElement& a, const ClassElement& b) {
  assert(a.size() == b.size());
  ClassElement out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
  return out;
}

ClassElement operator-(const ClassElement& a, const ClassElement& b) {
  assert(a.size() == b.size());
  ClassElement out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
  return out;
}

ClassElement GradingMap::degree_of(const Monomial& m) const {
  assert(m.nvars() == degrees.size());
  ClassElement d(rank, 0);
  for (std::size_t i = 0; i < degrees.size(); ++i)
    for (std::size_t k = 0; k < rank; ++k) d[k] += std::int64_t{m[i]} * degrees[i][k];
  return d;
}

ClassElement GradingMap::multiple_of_beta(std::int64_t a) const {
  ClassElement out(beta);
  for (auto& x : out) x *= a;
  return out;
}

ClassElement check_homogeneous(Polynomial& p, const GradingMap& g, std::span<const std::string> given) {
  if (p.nvars() != g.nvars())
    throw InvalidInput("polynomial has " + std::to_string(p.nvars()) + " variables, grading has " +
                       std::to_string(g.nvars()));
  if (p.is_zero()) throw DegreeMismatch("the zero polynomial has no degree");
  std::vector<std::string> names(given.begin(), given.end());
  if (names.size() != p.nvars()) {
    names.clear();
    for (std::size_t i = 0; i < p.nvars(); ++i) names.push_back("z" + std::to_string(i + 1));
  }
  const Monomial* first = nullptr;
  ClassElement deg;
  for (const auto& [m, c] : p.terms()) {
    ClassElement d = g.degree_of(m);
    if (!first) {
      first = &m;
      deg = std::move(d);
    } else if (d != deg) {
      throw NotHomogeneous(to_string(*first, names), to_string(m, names));
    }
  }
  p.set_degree(deg);
  return deg;
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var, const GradingMap& g) {
  Polynomial d = partial_derivative(p, var);
  if (p.degree() && !d.is_zero()) d.set_degree(*p.degree() - g.degrees[var]);
  return d;
}

}  // namespace lgfrob
