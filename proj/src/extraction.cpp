#include "pstab/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pstab/deficit.hpp"
#include "pstab/errors.hpp"
#include "pstab/norms.hpp"

namespace pstab {

namespace {

// lambda = Phi / P for a constant pressure P, with
// Phi = (p/(p-1))^{p-1} n^{1/p} ((n-p)/(p-1))^{-(p-1)^2/p}.
double lambda_scale_constant(const Params& pr) {
  return std::pow(pr.p / (pr.p - 1.0), pr.p - 1.0) * std::pow(pr.n, 1.0 / pr.p) *
         std::pow((pr.n - pr.p) / (pr.p - 1.0), -(pr.p - 1.0) * (pr.p - 1.0) / pr.p);
}

// Envelope constants of v against 1 + r^{p/(p-1)} on a log grid; their spread
// localizes the peak: |x0| <= ((C - c)/c)^{(p-1)/p}.
double localization_radius(const RadialField& v, const Params& pr) {
  double lo = 1e300, hi = 0.0;
  for (int i = 0; i <= 160; ++i) {
    const double r = std::pow(10.0, -2.0 + 5.0 * i / 160.0);
    const double ratio = v.value(r) / (1.0 + std::pow(r, pr.p_conj));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  if (!(lo > 0.0)) return 0.0;
  return std::pow(std::max(hi - lo, 0.0) / lo, (pr.p - 1.0) / pr.p);
}

}  // namespace

Schedule make_schedule(double deficit, const Params& params, double alpha,
                       const ExtractConfig& cfg, double r_floor) {
  if (deficit >= 1.0)
    throw DomainError("make_schedule: schedule undefined for deficit >= 1");
  const double p = params.p;
  const double n = params.n;

  Schedule s;
  s.alpha = alpha;
  s.q = std::min(p, p / (p - 1.0));
  const double two_minus_p_plus = std::max(2.0 - p, 0.0);
  s.frak_p = 2.0 * n * s.q + (p / (p - 1.0)) * (2.0 * n + two_minus_p_plus);
  s.m_exp = s.q / (4.0 * s.frak_p);
  if (two_minus_p_plus > 0.0) {
    const double m2 =
        alpha * s.q * (p - 1.0) * (p - 1.0) / (16.0 * (n - 1.0) * p * two_minus_p_plus);
    s.m_exp = std::min(s.m_exp, m2);
  }

  double t_raw, r_raw;
  if (deficit > 0.0) {
    t_raw = std::pow(deficit, 1.0 / (8.0 * (n - 1.0)));
    r_raw = std::pow(deficit, -s.m_exp);
  } else {
    t_raw = 0.0;  // clamps take over for an exactly solved input
    r_raw = cfg.r_max;
  }

  s.t = std::clamp(t_raw, cfg.t_min, cfg.t_max);
  s.t_clamped = s.t != t_raw;
  const double r_lo = std::max(r_floor, 1.0);
  s.r_big = std::clamp(r_raw, r_lo, cfg.r_max);
  s.r_clamped = s.r_big != r_raw;
  if (cfg.t_override > 0.0) {
    s.t = cfg.t_override;
    s.t_clamped = false;
  }
  if (cfg.r_big_override > 0.0) {
    s.r_big = cfg.r_big_override;
    s.r_clamped = false;
  }
  s.tau = s.t;
  return s;
}

double locate_peak(const RadialField& u, double r_hi) {
  const double r_lo = 1e-4;
  const int samples = 240;
  std::vector<double> rs, vals;
  rs.push_back(0.0);
  vals.push_back(u.value(0.0));
  const double top = std::min(r_hi, u.support_radius() * (1.0 - 1e-12));
  for (int i = 0; i <= samples; ++i) {
    const double r = r_lo * std::pow(std::max(top, 2.0 * r_lo) / r_lo,
                                     static_cast<double>(i) / samples);
    rs.push_back(r);
    vals.push_back(u.value(r));
  }

  size_t best = 0;
  for (size_t i = 1; i < vals.size(); ++i)
    if (vals[i] > vals[best]) best = i;

  if (vals.back() >= vals[best] * (1.0 - 1e-12) && vals.back() > 0.0)
    throw DomainError("locate_peak: field does not decay on the sampled range");

  // nonincreasing profile: the center is the peak
  if (best == 0) return 0.0;
  bool nonincreasing = true;
  for (size_t i = 1; i < vals.size(); ++i)
    if (vals[i] > vals[i - 1] * (1.0 + 1e-12)) {
      nonincreasing = false;
      break;
    }
  if (nonincreasing) return 0.0;

  // golden-section refinement on the sampled bracket
  double a = rs[best - 1];
  double b = (best + 1 < rs.size()) ? rs[best + 1] : rs[best];
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = u.value(x1), f2 = u.value(x2);
  while (b - a > 1e-12 * std::max(1.0, b)) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = u.value(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = u.value(x1);
    }
  }
  return 0.5 * (a + b);
}

Paraboloids paraboloids(const VField& vf, double p_bar, const Params& params) {
  if (!(p_bar > 0.0)) throw DomainError("paraboloids: mean pressure must be positive");
  const double p = params.p;
  const double n = params.n;

  Paraboloids out;
  const double v0 = vf.v.value(0.0);
  out.q_field = power_term_field(
      v0, (p - 1.0) / p * std::pow(p_bar / n, 1.0 / (p - 1.0)), params.p_conj);

  out.lambda = lambda_scale_constant(params) / p_bar;
  const double norm = std::pow(out.lambda, 1.0 / (p - 1.0)) * std::pow(n, 1.0 / p) *
                      std::pow((n - p) / (p - 1.0), (p - 1.0) / p);
  out.curly_q = power_term_field(std::pow(out.lambda, params.p_conj) / norm, 1.0 / norm,
                                 params.p_conj);
  return out;
}

ExtractionReport extract(const RadialField& u, const KappaField& kappa,
                         const Params& params, const QuadConfig& quad,
                         const ExtractConfig& cfg, Execution exec) {
  ExtractionReport rep;
  rep.quad_id = quad.id();

  rep.x0_radius = locate_peak(u, quad.r_cut);

  const VField vf = v_of_u(u, params);
  rep.v_at_x0 = vf.v.value(rep.x0_radius);

  const DeficitReport dr = deficit_report(u, kappa, params, quad, exec);
  rep.deficit = dr.deficit_cfm;
  rep.energy_window_ok = dr.energy_window_ok;

  rep.r_localization = localization_radius(vf.v, params);
  rep.x0_in_localization_ball = rep.x0_radius <= rep.r_localization + 1e-9;

  rep.schedule =
      make_schedule(std::min(rep.deficit, 1.0 - 1e-12), params, cfg.alpha, cfg,
                    rep.r_localization + 2.0);

  rep.p_bar = ball_mean_fn([&](double r) { return p_function(vf, r); }, rep.schedule.t,
                           params, quad, exec);

  const Paraboloids pq = paraboloids(vf, rep.p_bar, params);
  rep.lambda = pq.lambda;
  rep.bubble = Bubble{pq.lambda};

  const RadialField extracted = bubble_field(params, pq.lambda);
  const double p = params.p;
  auto grad_diff_p = [&](double r) {
    return std::pow(std::abs(u.derivative(r) - extracted.derivative(r)), p);
  };

  const double r_split = rep.schedule.r_big;
  const double sigma = surface_measure(params.n);
  const int n = params.n;

  const double interior =
      sigma * integrate_interval(
                  [&](double r) { return grad_diff_p(r) * std::pow(r, n - 1); }, 0.0,
                  r_split, quad, exec)
                  .value;

  // exterior piece: quadrature out to a working cut, analytic power tail past it
  const double r_far = std::max(4.0 * r_split, 2.0 * quad.r_cut);
  double exterior =
      sigma * integrate_interval(
                  [&](double r) { return grad_diff_p(r) * std::pow(r, n - 1); }, r_split,
                  r_far, quad, exec)
                  .value;
  const double decay = p * params.decay_grad();  // both gradients decay alike
  const double f_far = grad_diff_p(r_far);
  if (f_far > 0.0 && decay > n + 0.5)
    exterior += sigma * f_far * std::pow(r_far, n) / (decay - n);

  rep.err_interior = std::pow(interior, 1.0 / p);
  rep.err_exterior = std::pow(exterior, 1.0 / p);
  rep.err_total = std::pow(interior + exterior, 1.0 / p);
  return rep;
}

}  // namespace pstab
