#include "pstab/identity_check.hpp"

#include <cmath>
#include <string>

#include "pstab/errors.hpp"

namespace pstab {

namespace {

struct RadialState {
  double w, w1, w2, w3;  // w and derivatives
  double pres, dpres;    // P and P'
};

// P = n (p-1) V(w') / w + c / w  with V(xi) = |xi|^p / p.
RadialState eval_state(const RadialField& w, double p, int n, double c, double r) {
  const auto d = w.derivs(r, 3);
  RadialState s{d[0], d[1], d[2], d[3], 0.0, 0.0};
  const double gp = std::pow(std::abs(s.w1), p);
  const double gpm2 = std::pow(std::abs(s.w1), p - 2.0);
  s.pres = n * (p - 1.0) / p * gp / s.w + c / s.w;
  s.dpres = n * (p - 1.0) * gpm2 * s.w1 * s.w2 / s.w -
            n * (p - 1.0) / p * gp * s.w1 / (s.w * s.w) - c * s.w1 / (s.w * s.w);
  return s;
}

// Radial component of w^{2-n} A grad P; A's radial eigenvalue is (p-1)|w'|^{p-2}.
double flux(const RadialField& w, double p, int n, double c, double r) {
  const RadialState s = eval_state(w, p, n, c, r);
  return std::pow(s.w, 2.0 - n) * (p - 1.0) * std::pow(std::abs(s.w1), p - 2.0) * s.dpres;
}

}  // namespace

IdentityResidual identity_residual(const RadialField& w, double potential_p, int dim_n,
                                   double r, double fd_step, double min_gradient,
                                   std::optional<double> additive_constant) {
  const double p = potential_p;
  const int n = dim_n;
  if (!(p > 1.0)) throw DomainError("identity_residual: potential exponent must exceed 1");
  if (!(r > 0.0)) throw DomainError("identity_residual: requires r > 0");

  double c;
  if (additive_constant) {
    c = *additive_constant;
  } else if (p != static_cast<double>(n)) {
    c = std::pow(p / (n - p), p - 1.0);
  } else {
    c = 1.0;
  }

  const RadialState s = eval_state(w, p, n, c, r);
  if (std::abs(s.w1) < min_gradient)
    throw DegeneratePointError("identity_residual: |w'(r)| = " + std::to_string(s.w1) +
                               " below the gradient floor at r = " + std::to_string(r));

  // divergence of the radial flux via one outer central difference
  const double h = fd_step;
  const double fp = flux(w, p, n, c, r + h);
  const double fm = flux(w, p, n, c, r - h);
  const double f0 = flux(w, p, n, c, r);
  const double lhs = (fp - fm) / (2.0 * h) + (n - 1.0) * f0 / r;

  const double gpm2 = std::pow(std::abs(s.w1), p - 2.0);
  const double gpm4 = std::pow(std::abs(s.w1), p - 4.0);

  // stress Jacobian eigenvalues and d/dr of its trace
  const double om_r = (p - 1.0) * gpm2 * s.w2;
  const double om_t = gpm2 * s.w1 / r;
  const double tr_w = om_r + (n - 1.0) * om_t;
  const double tr_w2 = om_r * om_r + (n - 1.0) * om_t * om_t;
  const double dgpm2 = (p - 2.0) * gpm4 * s.w1 * s.w2;  // d/dr |w'|^{p-2}
  const double dom_r = (p - 1.0) * (dgpm2 * s.w2 + gpm2 * s.w3);
  const double dom_t = dgpm2 * s.w1 / r + gpm2 * (s.w2 / r - s.w1 / (r * r));
  const double dtr_w = dom_r + (n - 1.0) * dom_t;

  const double a_rad = (p - 1.0) * gpm2;             // radial eigenvalue of A
  const double agradp_dot_gradw = a_rad * s.dpres * s.w1;
  const double stress_rad = gpm2 * s.w1;             // a(grad w) radial component

  // contraction w_j V_{ijk}(grad w) w_ki in radial coordinates
  const double third = (p - 2.0) * gpm2 * ((p - 1.0) * s.w2 + (n - 1.0) * s.w1 / r);

  const double wpow = std::pow(s.w, 1.0 - n);
  const double rhs = wpow * (-n * agradp_dot_gradw - s.pres * tr_w +
                             n * (p - 1.0) * (tr_w2 + dtr_w * stress_rad) - s.pres * third);

  // normalize by the magnitude of the individual terms, not the (possibly
  // cancelling) totals
  const double term_scale =
      wpow * (std::abs(n * agradp_dot_gradw) + std::abs(s.pres * tr_w) +
              n * (p - 1.0) * (std::abs(tr_w2) + std::abs(dtr_w * stress_rad)) +
              std::abs(s.pres * third));

  IdentityResidual out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.residual = std::abs(lhs - rhs) / std::max(term_scale, 1e-300);
  return out;
}

}  // namespace pstab
