#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lgfrob {

// GMP keeps mpq_class canonical (reduced, positive denominator, 0 = 0/1)
// after every arithmetic operation.
using Integer = mpz_class;
using Rational = mpq_class;

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Accepts "p" or "p/q" with an optional leading sign; throws InvalidInput.
Rational parse_rational(std::string_view text);

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

// Throws InvalidInput when z does not fit.
std::int64_t to_int64(const Integer& z);

}  // namespace lgfrob
