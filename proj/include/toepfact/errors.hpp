#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace toepfact {

// Base of every error thrown by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class dimension_error : public error {
public:
  using error::error;
};

class out_of_range_error : public error {
public:
  using error::error;
};

class invalid_value_error : public error {
public:
  using error::error;
};

/// Gaussian elimination without pivoting hit a (near) zero pivot, or a
/// triangular split met a (near) zero diagonal. `stage()` is 1-based.
class non_generic_input : public error {
public:
  non_generic_input(const std::string& what, std::size_t stage)
      : error(what), stage_(stage) {}
  std::size_t stage() const noexcept { return stage_; }

private:
  std::size_t stage_;
};

class singular_factor : public error {
public:
  using error::error;
};

/// The nonlinear solver ran out of restarts.
class no_convergence : public error {
public:
  no_convergence(const std::string& what, double best_residual)
      : error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

private:
  double best_residual_;
};

class unsupported_arity : public error {
public:
  using error::error;
};

/// Malformed text input. `line()` is 1-based, 0 when unknown.
class parse_error : public error {
public:
  parse_error(const std::string& what, std::size_t line = 0)
      : error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace toepfact
