#include "pstab/deficit.hpp"

#include <cmath>

#include "pstab/errors.hpp"
#include "pstab/norms.hpp"

namespace pstab {

Kappa0Result kappa0_quotients(const RadialField& u, const KappaField& kappa,
                              const Params& params, const QuadConfig& cfg, Execution exec) {
  RadialIntegrand mass_in;
  mass_in.f = [u, ps = params.p_star](double r) { return std::pow(u.value(r), ps); };
  mass_in.support_radius = u.support_radius();
  mass_in.tail_exponent = params.p_star * params.decay_u();
  const double mass = integrate_radial(mass_in, params.n, cfg, exec).value;
  if (!(mass > 0.0)) throw DomainError("kappa0: vanishing L^{p*} mass");

  RadialIntegrand kmass_in;
  kmass_in.f = [u, kappa, ps = params.p_star](double r) {
    return kappa(r) * std::pow(u.value(r), ps);
  };
  kmass_in.support_radius = u.support_radius();
  kmass_in.tail_exponent = params.p_star * params.decay_u();
  const double kmass = integrate_radial(kmass_in, params.n, cfg, exec).value;

  RadialIntegrand grad_in;
  grad_in.f = [u, p = params.p](double r) { return std::pow(std::abs(u.derivative(r)), p); };
  grad_in.support_radius = u.support_radius();
  grad_in.tail_exponent = params.p * params.decay_grad();
  const double energy = integrate_radial(grad_in, params.n, cfg, exec).value;

  Kappa0Result out;
  out.value = kmass / mass;
  out.energy_quotient = energy / mass;
  out.rel_mismatch =
      std::abs(out.value - out.energy_quotient) / std::max(std::abs(out.value), 1e-300);
  return out;
}

double kappa0(const RadialField& u, const KappaField& kappa, const Params& params,
              const QuadConfig& cfg, Execution exec) {
  return kappa0_quotients(u, kappa, params, cfg, exec).value;
}

double deficit_cfm(const RadialField& u, const KappaField& kappa, const Params& params,
                   const QuadConfig& cfg, Execution exec) {
  const double k0 = kappa0(u, kappa, params, cfg, exec);
  // |(kappa - k0) u^{p*-1}|^{(p*)'} = |kappa - k0|^{(p*)'} u^{p*}
  const double dual = params.p_star_conj;
  RadialIntegrand in;
  in.f = [u, kappa, k0, dual, ps = params.p_star](double r) {
    return std::pow(std::abs(kappa(r) - k0), dual) * std::pow(u.value(r), ps);
  };
  in.support_radius = u.support_radius();
  in.tail_exponent = params.p_star * params.decay_u();
  // kappa - k0 is a small difference of order-one quantities; the integrand
  // carries a relative noise floor around 1e-13 that no refinement removes
  QuadConfig q = cfg;
  q.rel_tol = std::max(q.rel_tol, 1e-10);
  q.abs_tol = std::max(q.abs_tol, 1e-14);
  const double integral = integrate_radial(in, params.n, q, exec).value;
  return std::pow(integral, 1.0 / dual);
}

double sobolev_deficit(const RadialField& u, const Params& params, const QuadConfig& cfg,
                       Execution exec, const SobolevLevel* level) {
  SobolevLevel local;
  if (level == nullptr) {
    local = sobolev_level(params, cfg, exec);
    level = &local;
  }
  const double grad = norm_grad_lp(u, params, cfg, exec);
  const double mass = norm_lpstar(u, params, cfg, exec);
  if (!(mass > 0.0)) throw DomainError("sobolev_deficit: vanishing L^{p*} norm");
  return grad / mass - level->s;
}

Normalized normalize(const RadialField& u, const KappaField& kappa, const Params& params,
                     const QuadConfig& cfg, Execution exec) {
  const double k0 = kappa0(u, kappa, params, cfg, exec);
  if (!(k0 > 0.0)) throw DomainError("normalize: kappa0 must be positive");
  Normalized out;
  out.k0 = k0;
  out.w = scale(std::pow(k0, 1.0 / (params.p_star - params.p)), u);
  out.kappa_hat = kappa.scaled(1.0 / k0);
  return out;
}

DeficitReport deficit_report(const RadialField& u, const KappaField& kappa,
                             const Params& params, const QuadConfig& cfg, Execution exec,
                             const SobolevLevel* level) {
  SobolevLevel local;
  if (level == nullptr) {
    local = sobolev_level(params, cfg, exec);
    level = &local;
  }

  DeficitReport rep;
  const Kappa0Result k0 = kappa0_quotients(u, kappa, params, cfg, exec);
  rep.kappa0 = k0.value;
  rep.kappa0_energy_quotient = k0.energy_quotient;
  rep.deficit_cfm = deficit_cfm(u, kappa, params, cfg, exec);
  rep.sobolev_deficit = sobolev_deficit(u, params, cfg, exec, level);

  RadialIntegrand grad_in;
  grad_in.f = [u, p = params.p](double r) { return std::pow(std::abs(u.derivative(r)), p); };
  grad_in.support_radius = u.support_radius();
  grad_in.tail_exponent = params.p * params.decay_grad();
  rep.energy = integrate_radial(grad_in, params.n, cfg, exec).value;

  // window scaled by kappa0^{p/(p - p*)}
  const double scale = std::pow(rep.kappa0, params.p / (params.p - params.p_star));
  rep.window_lo = 0.5 * scale * level->s_pow_n;
  rep.window_hi = 1.5 * scale * level->s_pow_n;
  rep.energy_window_ok = rep.energy >= rep.window_lo && rep.energy <= rep.window_hi;
  rep.quad_id = cfg.id();
  return rep;
}

}  // namespace pstab
