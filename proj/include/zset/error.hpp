#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zset {

/// Malformed input: JSON that violates a representation invariant, bad
/// bounds, or a precondition the caller should have checked.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : std::runtime_error("syntax error at " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class SortError : public std::runtime_error {
 public:
  SortError(std::string variable, std::string expected, std::string found)
      : std::runtime_error("sort error for '" + variable + "': expected " + expected +
                           ", found " + found),
        variable_(std::move(variable)),
        expected_(std::move(expected)),
        found_(std::move(found)) {}
  const std::string& variable() const noexcept { return variable_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::string variable_, expected_, found_;
};

class UnboundVariable : public std::runtime_error {
 public:
  explicit UnboundVariable(std::string name)
      : std::runtime_error("unbound variable '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// A quantifier domain came out empty only because the search bounds exclude
/// every candidate (the base object is not initial).
class BoundsTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A map into Omega hit a component whose index does not divide N0.
/// Can only mean a bug in this library.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class InvalidCover : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotMonic : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace zset
