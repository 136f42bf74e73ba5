#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pstab/bubble.hpp"
#include "pstab/deficit.hpp"
#include "pstab/extraction.hpp"
#include "pstab/field.hpp"
#include "pstab/kappa.hpp"
#include "pstab/params.hpp"
#include "pstab/pfunction.hpp"
#include "pstab/quadrature.hpp"

namespace pstab {

// u_eps = U_lambda + eps * phi with the standard bump phi supported in
// [0, phi_radius], plus its induced coefficient. Checks the gradient
// collinearity |grad u_eps| = |grad U| + eps |grad phi| on a radial sample.
struct PerturbedFamily {
  RadialField u;
  KappaField kappa;
  RadialField bubble;
  RadialField phi;
  double epsilon = 0.0;
};
PerturbedFamily make_perturbed(const Params& params, double lambda, double epsilon,
                               double phi_radius);

// Certified lower bound of the dual residual norm: maximum of the weak-form
// pairing over a fixed dictionary of gradient-normalized profiles (bubbles
// and bumps on a scale ladder). Growing the size never lowers the bound.
double dual_lower_bound(const RadialField& u, const Params& params, const QuadConfig& cfg,
                        int dictionary_size, Execution exec = Execution::parallel);

// Projection onto the concentric slice of the extremal manifold: minimizes
// ||grad u - grad T_{a,b}||_{L^p} over amplitude and log b by golden-section
// coordinate descent from three starts. Any feasible point upper-bounds the
// true distance.
struct ProjectionResult {
  double distance = 0.0;
  TalentiElement best;
  std::vector<double> trace;  // objective after each accepted step
  bool stalled = false;
};
ProjectionResult projection_distance(const RadialField& u, const Params& params,
                                     const QuadConfig& cfg,
                                     Execution exec = Execution::parallel);

// Envelope constants against the ideal decay rates, fitted on a log grid.
struct DecayEnvelope {
  bool ok = false;
  std::string reason;
  double c0 = 0.0;  // inf  u (1 + r^{(n-p)/(p-1)})
  double C0 = 0.0;  // sup  u (1 + r^{(n-p)/(p-1)})
  double C1 = 0.0;  // sup |u'| (1 + r^{(n-1)/(p-1)})
  int violations = 0;
};
DecayEnvelope decay_envelope(const RadialField& u, const Params& params);

struct SweepConfig {
  Params params;
  std::vector<double> epsilon_grid;  // strictly decreasing, all < 1
  double lambda = 1.0;
  double phi_radius = 1.0;
  QuadConfig quad;
  ExtractConfig extract;
  int dictionary_size = 12;
  double weighted_t_exp = 1.0;
  uint64_t seed = 42;
};

struct SweepRecord {
  double epsilon = 0.0;
  double lhs_norm = 0.0;  // eps * ||grad phi||_p, exact by construction
  double lhs_norm_quadrature = 0.0;
  double kappa0 = 0.0;
  double deficit_cfm = 0.0;
  double sobolev_deficit = 0.0;
  double projection_distance = 0.0;
  double extraction_error = 0.0;
  double dual_lower_bound = 0.0;
  double lambda_hat = 0.0;
  double err_interior = 0.0;
  double err_exterior = 0.0;
  WeightedDiagnostics weighted;
  bool dual_consistency_ok = false;
  bool failed = false;
  std::string error;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
  bool dropped_largest = false;
};

// Least-squares fit of log y against log x; drops the largest-x point when
// its residual exceeds three times the fit RMS.
SlopeFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

struct SweepResult {
  std::vector<SweepRecord> records;
  std::map<std::string, SlopeFit> slopes;
  double grad_phi_norm = 0.0;
  double figalli_zhang_c = 0.0;  // fitted c in  sobolev_deficit >= c d^{max(2,p)}
  double sobolev_level_s = 0.0;
  std::string quad_id;
};

SweepResult run_sweep(const SweepConfig& cfg, Execution exec = Execution::parallel);

}  // namespace pstab
