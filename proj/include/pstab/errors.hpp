#pragma once

#include <stdexcept>
#include <string>

namespace pstab {

// Rejected input: parameters outside the admissible range, nonpositive
// fields where positivity is required, malformed grids, and so on.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation at a point where a requested derivative (or a limit form)
// does not exist, e.g. second derivative of r^{3/2} at r = 0.
class DegeneratePointError : public DomainError {
 public:
  explicit DegeneratePointError(const std::string& what) : DomainError(what) {}
};

// Evaluation at a critical point of the gradient where the stress tensor
// has no pointwise expression.
class CriticalPointError : public DomainError {
 public:
  explicit CriticalPointError(const std::string& what) : DomainError(what) {}
};

// Configurations the radial engine refuses (e.g. off-center transforms).
class UnsupportedConfigError : public DomainError {
 public:
  explicit UnsupportedConfigError(const std::string& what) : DomainError(what) {}
};

// Adaptive quadrature ran out of subdivisions. Carries the partial value
// and its error estimate so callers can inspect how far it got.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double partial_value, double err_est)
      : std::runtime_error(what), partial_value(partial_value), err_est(err_est) {}
  double partial_value;
  double err_est;
};

}  // namespace pstab
