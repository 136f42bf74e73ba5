#include "pstab/bubble.hpp"

#include <cmath>
#include <string>

#include "pstab/errors.hpp"
#include "pstab/norms.hpp"

namespace pstab {

namespace {

void check_bubble(const Bubble& b) {
  if (!(b.lambda > 0.0)) throw DomainError("bubble: lambda must be positive");
}

void check_talenti(const TalentiElement& e) {
  if (e.amp_a == 0.0) throw DomainError("talenti element: amplitude must be nonzero");
  if (!(e.b > 0.0)) throw DomainError("talenti element: b must be positive");
}

// U_1(0) = (n^{1/p} ((n-p)/(p-1))^{(p-1)/p})^{(n-p)/p}
double unit_center_value(const Params& params) {
  const double n = params.n;
  const double p = params.p;
  const double base = std::pow(n, 1.0 / p) * std::pow((n - p) / (p - 1.0), (p - 1.0) / p);
  return std::pow(base, (n - p) / p);
}

}  // namespace

double bubble_center_value(const Params& params, double lambda) {
  return unit_center_value(params) * std::pow(lambda, -(params.n - params.p) / params.p);
}

TalentiElement to_talenti(const Bubble& b, const Params& params) {
  check_bubble(b);
  TalentiElement e;
  e.amp_a = bubble_center_value(params, b.lambda);
  e.b = std::pow(b.lambda, -params.p_conj);
  return e;
}

RadialField talenti_field(const Params& params, const TalentiElement& e) {
  check_talenti(e);
  const double m = (params.n - params.p) / params.p;
  return scale(e.amp_a, pow_field(paraboloid_field(1.0, e.b, params), -m));
}

RadialField bubble_field(const Params& params, double lambda) {
  return talenti_field(params, to_talenti(Bubble{lambda}, params));
}

double talenti_eval(const TalentiElement& e, const Params& params, double r) {
  check_talenti(e);
  const double m = (params.n - params.p) / params.p;
  return e.amp_a * std::pow(1.0 + e.b * std::pow(r, params.p_conj), -m);
}

std::pair<double, double> bubble_eval(const Bubble& b, const Params& params, double r) {
  check_bubble(b);
  if (r < 0.0) throw DomainError("bubble_eval: negative radius");
  const auto d = bubble_field(params, b.lambda).derivs(r, 1);
  return {d[0], d[1]};
}

RadialField transform(const RadialField& f, double z_radius, double lambda,
                      const Params& params) {
  if (z_radius != 0.0)
    throw UnsupportedConfigError(
        "transform: only concentric (z = 0) transforms are supported in radial mode");
  if (!(lambda > 0.0)) throw DomainError("transform: lambda must be positive");
  const double prefactor = std::pow(lambda, (params.n - params.p) / params.p);
  return dilate(f, lambda, prefactor);
}

SobolevLevel sobolev_level(const Params& params, const QuadConfig& cfg, Execution exec) {
  const RadialField u = bubble_field(params, 1.0);

  RadialIntegrand grad_in;
  grad_in.f = [u, p = params.p](double r) { return std::pow(std::abs(u.derivative(r)), p); };
  grad_in.tail_exponent = params.p * params.decay_grad();
  const IntegralResult grad = integrate_radial(grad_in, params.n, cfg, exec);

  RadialIntegrand mass_in;
  mass_in.f = [u, ps = params.p_star](double r) { return std::pow(u.value(r), ps); };
  mass_in.tail_exponent = params.p_star * params.decay_u();
  const IntegralResult mass = integrate_radial(mass_in, params.n, cfg, exec);

  SobolevLevel out;
  out.s_pow_n = grad.value;
  out.s = std::pow(grad.value, 1.0 / params.n);
  out.cross_rel_gap = std::abs(grad.value - mass.value) / std::abs(grad.value);
  const double budget =
      std::max(1e-6, 10.0 * (grad.err_est + mass.err_est) / std::abs(grad.value));
  if (out.cross_rel_gap > budget)
    throw QuadratureError("sobolev_level: energy identity cross-check failed, gap " +
                              std::to_string(out.cross_rel_gap),
                          grad.value, grad.err_est + mass.err_est);
  return out;
}

}  // namespace pstab
