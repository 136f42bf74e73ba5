#pragma once

#include <string>

#include "pstab/field.hpp"
#include "pstab/kappa.hpp"
#include "pstab/params.hpp"
#include "pstab/quadrature.hpp"

namespace pstab {

// ||f||_{L^q}. When `decaying_like_solution` the analytic tail uses the
// solution decay rate (n-p)/(p-1); otherwise the tail slope is estimated.
double norm_lp(const RadialField& f, double q, const Params& params, const QuadConfig& cfg,
               Execution exec = Execution::parallel, bool decaying_like_solution = false);

// ||f||_{L^{p*}} with the solution tail rate.
double norm_lpstar(const RadialField& f, const Params& params, const QuadConfig& cfg,
                   Execution exec = Execution::parallel);

// ||grad f||_{L^p} with the gradient tail rate (n-1)/(p-1).
double norm_grad_lp(const RadialField& f, const Params& params, const QuadConfig& cfg,
                    Execution exec = Execution::parallel);

// \int v^{v_exp} |target|^q dV for a supplied weight field and target.
double weighted_integral(const RadialField& v, double v_exp, const RadialField& target,
                         double q, const Params& params, const QuadConfig& cfg,
                         Execution exec = Execution::parallel);

// Mean of f over the ball B_t:  n t^{-n} \int_0^t f r^{n-1} dr.
double ball_mean(const RadialField& f, double t, const Params& params, const QuadConfig& cfg,
                 Execution exec = Execution::parallel);
double ball_mean_fn(const std::function<double(double)>& f, double t, const Params& params,
                    const QuadConfig& cfg, Execution exec = Execution::parallel);

// Two-column text import (radius, value), '#' comments, strictly increasing
// radii. The samples are fitted by a natural cubic spline and the resulting
// field is flagged reduced-precision.
struct GridImport {
  RadialField field;
  int points = 0;
  double r_min = 0.0;
  double r_max = 0.0;
};
GridImport import_grid(const std::string& path);

}  // namespace pstab
