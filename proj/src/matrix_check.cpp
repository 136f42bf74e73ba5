#include "pstab/matrix_check.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "pstab/errors.hpp"
#include "pstab/rng.hpp"

namespace pstab {

namespace {

constexpr int kMaxDim = 6;
using Mat = std::array<std::array<double, kMaxDim>, kMaxDim>;

struct TrialSlack {
  double antisym = 0.0;
  double trace = 0.0;
};

// X = P S with P = Q diag(d) Q^T; eigenvalues of P are drawn log-uniform in
// [0.1, 10] so the ratio rho is known exactly, no eigensolver involved.
TrialSlack run_trial(int dim, uint64_t seed, uint64_t stream) {
  Rng rng(seed, stream);

  std::array<double, kMaxDim> eig{};
  double emin = 1e300, emax = 0.0;
  for (int i = 0; i < dim; ++i) {
    eig[i] = std::pow(10.0, rng.uniform(-1.0, 1.0));
    emin = std::min(emin, eig[i]);
    emax = std::max(emax, eig[i]);
  }
  const double rho = emin / emax;
  const double c = (1.0 - rho) * (1.0 - rho) / (1.0 + rho * rho);

  // orthogonal Q from a product of random Givens rotations
  Mat q{};
  for (int i = 0; i < dim; ++i) q[i][i] = 1.0;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const double th = rng.uniform(0.0, 2.0 * M_PI);
      const double cs = std::cos(th), sn = std::sin(th);
      for (int k = 0; k < dim; ++k) {
        const double a = q[k][i], b = q[k][j];
        q[k][i] = cs * a - sn * b;
        q[k][j] = sn * a + cs * b;
      }
    }

  Mat pm{};
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      double s = 0.0;
      for (int k = 0; k < dim; ++k) s += q[i][k] * eig[k] * q[j][k];
      pm[i][j] = s;
    }

  Mat sm{};
  for (int i = 0; i < dim; ++i) {
    sm[i][i] = rng.normal();
    for (int j = i + 1; j < dim; ++j) sm[i][j] = sm[j][i] = rng.normal();
  }

  Mat x{};
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      double s = 0.0;
      for (int k = 0; k < dim; ++k) s += pm[i][k] * sm[k][j];
      x[i][j] = s;
    }

  double norm2 = 0.0, anti2 = 0.0, trx = 0.0, trx2 = 0.0;
  for (int i = 0; i < dim; ++i) {
    trx += x[i][i];
    for (int j = 0; j < dim; ++j) {
      norm2 += x[i][j] * x[i][j];
      const double a = x[i][j] - x[j][i];
      anti2 += a * a;
      trx2 += x[i][j] * x[j][i];
    }
  }
  double ring2 = norm2 - trx * trx / dim;
  ring2 = std::max(ring2, 0.0);

  TrialSlack out;
  out.antisym = (anti2 - 2.0 * c * norm2) / std::max(norm2, 1e-300);
  out.trace = (-c * ring2 - (trx2 - norm2)) / std::max(ring2, 1e-300);
  return out;
}

}  // namespace

MatrixCheckReport matrix_inequality_check(const MatrixCheckConfig& cfg, Execution exec) {
  if (cfg.trials < 1) throw DomainError("matrix_inequality_check: trials must be >= 1");
  if (cfg.dim_min < 2 || cfg.dim_max > kMaxDim || cfg.dim_min > cfg.dim_max)
    throw DomainError("matrix_inequality_check: dims must lie in 2..6");

  MatrixCheckReport rep;
  rep.slack_tol = cfg.slack_tol;

  for (int dim = cfg.dim_min; dim <= cfg.dim_max; ++dim) {
    MatrixDimReport dr;
    dr.dim = dim;
    dr.trials = cfg.trials;
    double worst_a = -1e300, worst_t = -1e300;
    int violations = 0;

    // max/sum reductions are order-independent, so this parallel loop is
    // deterministic by construction
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static) reduction(max : worst_a, worst_t) \
    reduction(+ : violations)
      for (int t = 0; t < cfg.trials; ++t) {
        const TrialSlack s =
            run_trial(dim, cfg.seed, static_cast<uint64_t>(dim) * 0x100000ULL + t);
        worst_a = std::max(worst_a, s.antisym);
        worst_t = std::max(worst_t, s.trace);
        if (s.antisym > cfg.slack_tol || s.trace > cfg.slack_tol) ++violations;
      }
    } else {
      for (int t = 0; t < cfg.trials; ++t) {
        const TrialSlack s =
            run_trial(dim, cfg.seed, static_cast<uint64_t>(dim) * 0x100000ULL + t);
        worst_a = std::max(worst_a, s.antisym);
        worst_t = std::max(worst_t, s.trace);
        if (s.antisym > cfg.slack_tol || s.trace > cfg.slack_tol) ++violations;
      }
    }

    dr.max_slack_antisym = worst_a;
    dr.max_slack_trace = worst_t;
    dr.violations = violations;
    rep.total_violations += violations;
    rep.dims.push_back(dr);
  }

  rep.c_monotone = true;
  double prev = 1e300;
  for (int i = 0; i < 100; ++i) {
    const double rho = 0.01 + (1.0 - 0.01) * i / 99.0;
    const double c = (1.0 - rho) * (1.0 - rho) / (1.0 + rho * rho);
    if (c > prev) rep.c_monotone = false;
    prev = c;
  }
  return rep;
}

}  // namespace pstab
