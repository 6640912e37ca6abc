#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fl0 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that could not be read or parsed. The CLI maps every subclass to
/// exit status 2.
class InputError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public InputError {
 public:
  SyntaxError(std::size_t line, std::size_t column, std::string expected, std::string found);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

/// A constructor outside {⊤, ⊓, ∀} such as an existential restriction.
class UnsupportedConstructor : public InputError {
 public:
  UnsupportedConstructor(std::size_t line, std::size_t column, std::string constructor);

  const std::string& constructor() const { return constructor_; }

 private:
  std::string constructor_;
};

/// A unifier produced by the solver failed independent verification.
/// Always an internal defect.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

/// A generic goal too large for the fixed-width atom sets of the shortcut phase.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace fl0
