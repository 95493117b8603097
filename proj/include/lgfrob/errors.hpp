#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lgfrob {

// Base of every error raised by the library. Callers that only need to
// distinguish "bad input" from "mathematics failed" can use kind().
class Error : public std::runtime_error {
 public:
  enum class Kind { Input, Validation, Certificate };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& msg)
      : Error(Kind::Input, "syntax error at offset " + std::to_string(offset) + ": " + msg),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(std::string name)
      : Error(Kind::Input, "unknown variable '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& msg) : Error(Kind::Input, msg) {}
};

struct NotHomogeneous : Error {
  NotHomogeneous(std::string first, std::string second)
      : Error(Kind::Input, "polynomial is not homogeneous: " + first + " and " + second +
                               " have different degrees"),
        first_monomial(std::move(first)),
        second_monomial(std::move(second)) {}
  std::string first_monomial;
  std::string second_monomial;
};

struct DegreeMismatch : Error {
  explicit DegreeMismatch(const std::string& msg) : Error(Kind::Input, msg) {}
};

struct TorsionClassGroup : Error {
  explicit TorsionClassGroup(const std::string& msg) : Error(Kind::Validation, msg) {}
};

struct NotReflexivePipeline : Error {
  explicit NotReflexivePipeline(const std::string& msg) : Error(Kind::Validation, msg) {}
};

struct DegeneratePolytope : Error {
  explicit DegeneratePolytope(const std::string& msg) : Error(Kind::Validation, msg) {}
};

struct NoFunctional : Error {
  explicit NoFunctional(const std::string& msg) : Error(Kind::Certificate, msg) {}
};

struct SocleNotOneDimensional : Error {
  explicit SocleNotOneDimensional(const std::string& msg) : Error(Kind::Certificate, msg) {}
};

struct HessianGeneratorZero : Error {
  explicit HessianGeneratorZero(const std::string& msg) : Error(Kind::Certificate, msg) {}
};

struct StrategyNotAdmissible : Error {
  explicit StrategyNotAdmissible(const std::string& msg) : Error(Kind::Input, msg) {}
};

}  // namespace lgfrob
