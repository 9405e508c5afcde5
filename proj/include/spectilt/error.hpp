#pragma once

#include <stdexcept>
#include <string>

namespace spectilt {

/// Failure categories; the CLI maps them onto process exit codes.
enum class ErrorKind {
  input = 2,      // malformed or inconsistent user input
  budget = 3,     // a cap (pd, saturation, minor size) was hit
  invariant = 4,  // internal consistency breach: always a bug
};

/// Base exception. `code` is module-qualified, e.g. "homalg.grade".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(what), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
  std::string code_;
};

class InputError : public Error {
 public:
  InputError(std::string code, const std::string& what)
      : Error(ErrorKind::input, std::move(code), what) {}
};

class BudgetError : public Error {
 public:
  BudgetError(std::string code, const std::string& what)
      : Error(ErrorKind::budget, std::move(code), what) {}
};

class InvariantError : public Error {
 public:
  InvariantError(std::string code, const std::string& what)
      : Error(ErrorKind::invariant, std::move(code), what) {}
};

inline void ensure(bool cond, const char* code, const std::string& what) {
  if (!cond) throw InvariantError(code, what);
}

}  // namespace spectilt
