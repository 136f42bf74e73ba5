#pragma once

#include <utility>

#include "pstab/field.hpp"
#include "pstab/params.hpp"
#include "pstab/quadrature.hpp"

namespace pstab {

// Extremal profile with unit-normalized amplitude; centered at the origin
// (the engine is radial, off-center members are rejected where they would
// be needed).
struct Bubble {
  double lambda = 1.0;  // scale parameter, > 0
};

// General element of the extremal manifold, concentric slice:
//   a (1 + b r^{p/(p-1)})^{-(n-p)/p},  a != 0, b > 0.
struct TalentiElement {
  double amp_a = 1.0;
  double b = 1.0;
};

struct SobolevLevel {
  double s_pow_n = 0.0;    // computed energy level S^n
  double s = 0.0;          // n-th root
  double cross_rel_gap = 0.0;  // relative gap between the two defining integrals
};

// Center value U(0) = lambda^{-(n-p)/p} * U_1(0).
double bubble_center_value(const Params& params, double lambda);

// (value, d/dr) at radius r, both analytic.
std::pair<double, double> bubble_eval(const Bubble& b, const Params& params, double r);

double talenti_eval(const TalentiElement& e, const Params& params, double r);

// Exact algebraic reparameterization: b = lambda^{-p/(p-1)}, amplitude fixed
// by matching center values.
TalentiElement to_talenti(const Bubble& b, const Params& params);

// Expression-tree forms.
RadialField bubble_field(const Params& params, double lambda);
RadialField talenti_field(const Params& params, const TalentiElement& e);

// Energy-normalized dilation x -> lambda^{(n-p)/p} f(lambda (x - z)).
// Only the concentric case z = 0 is supported; other centers throw.
RadialField transform(const RadialField& f, double z_radius, double lambda,
                      const Params& params);

// S^n as the gradient energy of the unit bubble, cross-checked against the
// L^{p*} mass. Throws QuadratureError if the two disagree beyond tolerance.
SobolevLevel sobolev_level(const Params& params, const QuadConfig& cfg,
                           Execution exec = Execution::parallel);

}  // namespace pstab
