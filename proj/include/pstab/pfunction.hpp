#pragma once

#include "pstab/field.hpp"
#include "pstab/kappa.hpp"
#include "pstab/params.hpp"
#include "pstab/quadrature.hpp"

namespace pstab {

// The substitution v = u^{-p/(n-p)} together with its source.
struct VField {
  RadialField v;
  RadialField u;
  Params params;
};

VField v_of_u(const RadialField& u, const Params& params);

// P  = n (p-1)/p v^{-1} |v'|^p + (p/(n-p))^{p-1} v^{-1}
// R  = (p/(n-p))^{p-1} (kappa - 1) v^{-1}
// dp = radial derivative of P (needs v'').
struct PValue {
  double p = 0.0;
  double dp = 0.0;
  double remainder = 0.0;
};

PValue p_and_remainder(const VField& vf, const KappaField& kappa, double r);
double p_function(const VField& vf, double r);
double p_function_derivative(const VField& vf, double r);

// Radial/tangential eigenvalues of the stress Jacobian W = grad a(grad v):
//   mu_r = (|v'|^{p-2} v')',  mu_t = |v'|^{p-2} v' / r  (multiplicity n-1).
// ring_norm2 = |W̊|^2 = (n-1)/n (mu_r - mu_t)^2.
struct WComponents {
  double mu_r = 0.0;
  double mu_t = 0.0;
  double tr_w = 0.0;
  double ring_norm2 = 0.0;
};

// Throws CriticalPointError where v'(r) = 0.
WComponents w_components(const VField& vf, double r);

// rho_p = (p-1)^{sgn(2-p)}, c_p = (1-rho)^2 / (1+rho^2); c_p in [0,1).
struct CpConstant {
  double rho_p = 0.0;
  double c_p = 0.0;
};
CpConstant c_p_constant(double p);

// Weighted integral diagnostics built from the stress deviation.
struct WeightedDiagnostics {
  double p_bar = 0.0;        // mean of P over the ball B_{t_mean}
  double i_ring = 0.0;       // \int v^{1-n} |W̊|^2 P^t dV
  double i_gradp = 0.0;      // \int v^{2-n} |v'|^{p-2} P^{t-1} |P'|^2 dV
  double i_dev_q1 = 0.0;     // \int_{B_R} v^{-n} |W - (p_bar/n) Id|   dV
  double i_dev_q2 = 0.0;     // \int_{B_R} v^{-n} |W - (p_bar/n) Id|^2 dV
  double t_exp = 1.0;
  double t_mean = 0.0;
  double r_domain = 0.0;
};

// t_exp >= 1 weights the first two integrals by P^t; t_mean is the averaging
// ball for p_bar; r_domain bounds the deviation integrals (quad r_cut if 0).
WeightedDiagnostics weighted_diagnostics(const RadialField& u, const KappaField& kappa,
                                         const Params& params, const QuadConfig& cfg,
                                         double t_exp, double t_mean, double r_domain = 0.0,
                                         Execution exec = Execution::parallel);

}  // namespace pstab
