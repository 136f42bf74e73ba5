#pragma once

#include <cstdint>
#include <vector>

#include "pstab/quadrature.hpp"

namespace pstab {

// Randomized verification of the two algebraic matrix inequalities behind the
// stress estimate: for X = P S with P symmetric positive definite, S
// symmetric, and c = (1-rho)^2/(1+rho^2) from the eigenvalue ratio rho of P,
//   |X - X^T|^2 <= 2 c |X|^2      and      tr X^2 - |X|^2 >= -c |X̊|^2.
// Slack is normalized by the squared norm on the right-hand side.
struct MatrixCheckConfig {
  int dim_min = 2;
  int dim_max = 6;
  int trials = 10000;
  uint64_t seed = 42;
  double slack_tol = 1e-10;
};

struct MatrixDimReport {
  int dim = 0;
  int trials = 0;
  double max_slack_antisym = 0.0;
  double max_slack_trace = 0.0;
  int violations = 0;
};

struct MatrixCheckReport {
  std::vector<MatrixDimReport> dims;
  int total_violations = 0;
  bool c_monotone = false;  // c(rho) decreasing on a 100-point grid
  double slack_tol = 0.0;
};

MatrixCheckReport matrix_inequality_check(const MatrixCheckConfig& cfg,
                                          Execution exec = Execution::parallel);

}  // namespace pstab
