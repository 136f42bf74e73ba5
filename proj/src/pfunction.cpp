#include "pstab/pfunction.hpp"

#include <cmath>
#include <string>

#include "pstab/errors.hpp"
#include "pstab/norms.hpp"

namespace pstab {

namespace {
// Inner cutoff below which the P/W quantities are not evaluated.
constexpr double kInnerRadius = 1e-8;

double pm_constant(const Params& params) {
  return std::pow(params.p / (params.n - params.p), params.p - 1.0);
}
}  // namespace

VField v_of_u(const RadialField& u, const Params& params) {
  if (u.positivity() != Positivity::positive)
    throw DomainError("v_of_u: source field must be positive");
  VField vf;
  vf.u = u;
  vf.v = pow_field(u, -params.p / (params.n - params.p));
  vf.params = params;
  return vf;
}

PValue p_and_remainder(const VField& vf, const KappaField& kappa, double r) {
  const Params& pr = vf.params;
  const double rr = std::max(r, kInnerRadius);
  const auto d = vf.v.derivs(rr, 2);
  const double c = pm_constant(pr);
  const double gp = std::pow(std::abs(d[1]), pr.p);

  PValue out;
  out.p = pr.n * (pr.p - 1.0) / pr.p * gp / d[0] + c / d[0];
  // d/dr of both terms; |v'|^p differentiates to p |v'|^{p-2} v' v''
  const double gp2 = std::pow(std::abs(d[1]), pr.p - 2.0);
  out.dp = pr.n * (pr.p - 1.0) * gp2 * d[1] * d[2] / d[0] -
           pr.n * (pr.p - 1.0) / pr.p * gp * d[1] / (d[0] * d[0]) -
           c * d[1] / (d[0] * d[0]);
  out.remainder = c * (kappa(rr) - 1.0) / d[0];
  return out;
}

double p_function(const VField& vf, double r) {
  return p_and_remainder(vf, KappaField::constant(1.0), r).p;
}

double p_function_derivative(const VField& vf, double r) {
  return p_and_remainder(vf, KappaField::constant(1.0), r).dp;
}

WComponents w_components(const VField& vf, double r) {
  const Params& pr = vf.params;
  if (!(r > 0.0)) throw DomainError("w_components: requires r > 0");
  const auto d = vf.v.derivs(r, 2);
  if (d[1] == 0.0)
    throw CriticalPointError("w_components: v'(r) = 0 at r = " + std::to_string(r));
  const double w = std::pow(std::abs(d[1]), pr.p - 2.0);
  WComponents out;
  out.mu_r = (pr.p - 1.0) * w * d[2];
  out.mu_t = w * d[1] / r;
  out.tr_w = out.mu_r + (pr.n - 1.0) * out.mu_t;
  const double diff = out.mu_r - out.mu_t;
  out.ring_norm2 = (pr.n - 1.0) / pr.n * diff * diff;
  return out;
}

CpConstant c_p_constant(double p) {
  if (!(p > 1.0)) throw DomainError("c_p_constant: requires p > 1");
  CpConstant out;
  const double s = (2.0 - p > 0.0) ? 1.0 : ((2.0 - p < 0.0) ? -1.0 : 0.0);
  out.rho_p = std::pow(p - 1.0, s);
  out.c_p = (1.0 - out.rho_p) * (1.0 - out.rho_p) / (1.0 + out.rho_p * out.rho_p);
  return out;
}

WeightedDiagnostics weighted_diagnostics(const RadialField& u, const KappaField& kappa,
                                         const Params& params, const QuadConfig& cfg,
                                         double t_exp, double t_mean, double r_domain,
                                         Execution exec) {
  if (!(t_exp >= 1.0)) throw DomainError("weighted_diagnostics: t_exp must be >= 1");
  if (!(t_mean > 0.0)) throw DomainError("weighted_diagnostics: t_mean must be positive");
  const VField vf = v_of_u(u, params);
  if (r_domain <= 0.0) r_domain = cfg.r_cut;

  WeightedDiagnostics out;
  out.t_exp = t_exp;
  out.t_mean = t_mean;
  out.r_domain = r_domain;
  out.p_bar =
      ball_mean_fn([&](double r) { return p_function(vf, r); }, t_mean, params, cfg, exec);

  const int n = params.n;
  const double mu = out.p_bar / n;

  RadialIntegrand ring_in;
  ring_in.f = [&, t_exp](double r) {
    const auto wc = w_components(vf, r);
    const double pv = p_function(vf, r);
    return std::pow(vf.v.value(r), 1.0 - n) * wc.ring_norm2 * std::pow(pv, t_exp);
  };
  out.i_ring = integrate_radial(ring_in, n, cfg, exec).value;

  RadialIntegrand gradp_in;
  gradp_in.f = [&, t_exp](double r) {
    const auto d = vf.v.derivs(r, 2);
    const PValue pv = p_and_remainder(vf, kappa, r);
    return std::pow(d[0], 2.0 - n) * std::pow(std::abs(d[1]), params.p - 2.0) *
           std::pow(pv.p, t_exp - 1.0) * pv.dp * pv.dp;
  };
  out.i_gradp = integrate_radial(gradp_in, n, cfg, exec).value;

  auto dev2 = [&](double r) {
    const auto wc = w_components(vf, r);
    const double dr = wc.mu_r - mu;
    const double dt = wc.mu_t - mu;
    return dr * dr + (n - 1.0) * dt * dt;
  };
  auto vw = [&](double r) { return std::pow(vf.v.value(r), -static_cast<double>(n)); };

  out.i_dev_q1 = surface_measure(n) *
                 integrate_interval(
                     [&](double r) { return vw(r) * std::sqrt(dev2(r)) * std::pow(r, n - 1); },
                     kInnerRadius, r_domain, cfg, exec)
                     .value;
  out.i_dev_q2 = surface_measure(n) *
                 integrate_interval(
                     [&](double r) { return vw(r) * dev2(r) * std::pow(r, n - 1); },
                     kInnerRadius, r_domain, cfg, exec)
                     .value;
  return out;
}

}  // namespace pstab
