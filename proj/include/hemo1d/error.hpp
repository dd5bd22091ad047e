#pragma once

#include <stdexcept>
#include <string>

namespace hemo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (e.g. alpha <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Wall or scenario parameters violating their invariants.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver (Newton, quadrature) failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Cross-sectional area became non-positive during time integration.
class PositivityError : public Error {
 public:
  PositivityError(const std::string& what, int cell, int stage)
      : Error(what), cell_(cell), stage_(stage) {}
  int cell() const noexcept { return cell_; }
  int stage() const noexcept { return stage_; }

 private:
  int cell_;
  int stage_;
};

}  // namespace hemo
