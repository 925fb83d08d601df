#pragma once

#include <stdexcept>
#include <string>

namespace icr {

// Malformed input to a mathematical operation (shape, rank, lattice membership).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unreadable cone document or command-line value; `line` is 1-based, 0 when
// unknown.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t line = 0) : std::invalid_argument(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A target vector does not lie in the cone. `coefficient` names the offending
// generator coefficient, or is npos when the vector is outside the linear hull.
class NotInCone : public std::domain_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  NotInCone(const std::string& what, std::size_t coefficient, std::string value)
      : std::domain_error(what), coefficient_(coefficient), value_(std::move(value)) {}
  std::size_t coefficient() const { return coefficient_; }
  const std::string& value() const { return value_; }

 private:
  std::size_t coefficient_;
  std::string value_;
};

// A cone does not satisfy the premises of a construction (e.g. the det=5 cover).
class PreconditionFailed : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Something that the theory forbids happened; always an implementation bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A bounded search ran out of budget without an answer.
class Unresolved : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace icr
