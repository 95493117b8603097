#pragma once

#include <cstddef>
#include <vector>

#include "lgfrob/polynomial.hpp"

namespace lgfrob {

// Degree homomorphism Z^r -> Cl = Z^k, z_i |-> degrees[i]. Produced by
// class_group(); beta is the anticanonical class sum_i deg(z_i).
struct GradingMap {
  std::size_t rank = 0;
  std::vector<ClassElement> degrees;
  ClassElement beta;

  std::size_t nvars() const noexcept { return degrees.size(); }
  ClassElement degree_of(const Monomial& m) const;
  ClassElement multiple_of_beta(std::int64_t a) const;
};

ClassElement operator+(const ClassElement& a, const ClassElement& b);
ClassElement operator-(const ClassElement& a, const ClassElement& b);

// Common degree of all monomials of p; stamps p. Throws NotHomogeneous.
// The zero polynomial has no degree and is rejected with DegreeMismatch.
// Variable names only decorate the error message.
ClassElement check_homogeneous(Polynomial& p, const GradingMap& g,
                               std::span<const std::string> names = {});

// partial derivative stamped with deg p - deg z_i when p is stamped and the
// result is nonzero.
Polynomial partial_derivative(const Polynomial& p, std::size_t var, const GradingMap& g);

}  // namespace lgfrob
