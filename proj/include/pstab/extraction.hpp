#pragma once

#include "pstab/bubble.hpp"
#include "pstab/field.hpp"
#include "pstab/kappa.hpp"
#include "pstab/params.hpp"
#include "pstab/pfunction.hpp"
#include "pstab/quadrature.hpp"

namespace pstab {

// Parameter schedule tied to the measured deficit d:
//   t = tau = d^{1/(8(n-1))},   r_big = d^{-m},
//   q = min{p, p/(p-1)},  frak_p = 2nq + p/(p-1) [2n + (2-p)_+],
//   m = min{ q/(4 frak_p), alpha q (p-1)^2 / (16 (n-1) p (2-p)_+) },
// the second branch only when p < 2. Both radii are clamped to workable
// desk-scale ranges; the clamp flags record when that binds.
struct Schedule {
  double t = 0.0;
  double tau = 0.0;
  double r_big = 0.0;
  double m_exp = 0.0;
  double q = 0.0;
  double frak_p = 0.0;
  double alpha = 0.5;
  bool t_clamped = false;
  bool r_clamped = false;
};

struct ExtractConfig {
  double alpha = 0.5;       // Hoelder exponent entering m for p < 2
  double t_min = 1e-3;
  double t_max = 1.0;
  double r_max = 1e3;
  double t_override = 0.0;      // > 0 forces the averaging radius
  double r_big_override = 0.0;  // > 0 forces the split radius
};

// r_floor is the lower clamp for r_big (ℛ + 2 from the fitted envelopes).
Schedule make_schedule(double deficit, const Params& params, double alpha,
                       const ExtractConfig& cfg, double r_floor);

// Argmax radius of a continuous decaying field: 0 when radially
// nonincreasing, otherwise golden-section refinement of the sampled argmax.
double locate_peak(const RadialField& u, double r_hi = 1e3);

struct Paraboloids {
  RadialField q_field;   // v(x0) + (p-1)/p (p_bar/n)^{1/(p-1)} r^{p/(p-1)}
  RadialField curly_q;   // (lambda^{p/(p-1)} + r^{p/(p-1)}) / N(lambda)
  double lambda = 0.0;
};

// The two tangent paraboloids and the scale factor they pin down; their
// radial derivatives coincide identically.
Paraboloids paraboloids(const VField& vf, double p_bar, const Params& params);

struct ExtractionReport {
  double x0_radius = 0.0;
  double v_at_x0 = 0.0;
  double p_bar = 0.0;
  double lambda = 0.0;
  Bubble bubble;
  double err_interior = 0.0;  // ||grad(u - U_ext)||_{L^p(B_r)}
  double err_exterior = 0.0;
  double err_total = 0.0;     // err_total^p = err_interior^p + err_exterior^p
  double deficit = 0.0;
  Schedule schedule;
  bool energy_window_ok = true;
  bool x0_in_localization_ball = true;  // |x0| <= fitted ℛ
  double r_localization = 0.0;
  std::string quad_id;
};

// Peak -> v -> ball mean of P -> paraboloids -> bubble -> split error norms.
ExtractionReport extract(const RadialField& u, const KappaField& kappa,
                         const Params& params, const QuadConfig& quad,
                         const ExtractConfig& cfg = {},
                         Execution exec = Execution::parallel);

}  // namespace pstab
