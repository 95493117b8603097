#include "lgfrob/parser.hpp"

#include <cctype>
#include <limits>

#include "lgfrob/errors.hpp"

namespace lgfrob {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> variables)
      : text_(text), vars_(variables) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (accept('^')) {
      skip_ws();
      const Integer e = natural("exponent");
      if (e > std::numeric_limits<std::int32_t>::max()) fail("exponent too large");
      b = pow(b, static_cast<std::uint32_t>(e.get_ui()));
    }
    return b;
  }

  Integer natural(const char* what) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = natural("number");
      Integer den = 1;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        const std::size_t at = pos_;
        den = natural("denominator");
        if (den == 0) throw SyntaxError(at, "zero denominator");
      }
      Rational q(num, den);
      q.canonicalize();
      return Polynomial::constant(vars_.size(), q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return Polynomial::variable(vars_.size(), i);
      throw UnknownVariable(name);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::span<const std::string> vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> variables) {
  return Parser(text, variables).parse();
}

}  // namespace lgfrob
