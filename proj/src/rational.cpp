#include "lgfrob/rational.hpp"

#include <cctype>
#include <limits>

#include "lgfrob/errors.hpp"

namespace lgfrob {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw InvalidInput("malformed rational '" + std::string(text) + "'");
  Integer n{std::string(num)};
  Integer d{std::string(den)};
  if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw InvalidInput("integer " + z.get_str() + " out of range");
  return static_cast<std::int64_t>(z.get_si());
}

}  // namespace lgfrob
