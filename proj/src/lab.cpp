#include "pstab/lab.hpp"

#include <algorithm>
#include <cmath>

#include "pstab/errors.hpp"
#include "pstab/norms.hpp"

namespace pstab {

namespace {

// Scale ladder shared by the dictionary builders: 1, 2, 1/2, 4, 1/4, ...
double ladder(int k) {
  if (k == 0) return 1.0;
  const int step = (k + 1) / 2;
  return (k % 2 == 1) ? std::pow(2.0, step) : std::pow(2.0, -step);
}

struct DictionaryEntry {
  RadialField field;
  double grad_norm = 0.0;
};

std::vector<DictionaryEntry> build_dictionary(const Params& params, const QuadConfig& cfg,
                                              int size, Execution exec) {
  std::vector<DictionaryEntry> out;
  out.reserve(static_cast<size_t>(size));
  for (int k = 0; k < size; ++k) {
    RadialField f = (k % 2 == 0) ? bubble_field(params, ladder(k / 2))
                                 : bump_field(ladder(k / 2));
    DictionaryEntry e{f, norm_grad_lp(f, params, cfg, exec)};
    out.push_back(std::move(e));
  }
  return out;
}

double golden_min(const std::function<double(double)>& f, double a, double b, double tol,
                  int max_iter = 80) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
    if (f1 > f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

PerturbedFamily make_perturbed(const Params& params, double lambda, double epsilon,
                               double phi_radius) {
  if (!(epsilon >= 0.0) || epsilon >= 1.0)
    throw DomainError("make_perturbed: epsilon must lie in [0, 1)");
  if (!(phi_radius > 0.0)) throw DomainError("make_perturbed: phi_radius must be positive");

  PerturbedFamily fam;
  fam.epsilon = epsilon;
  fam.bubble = bubble_field(params, lambda);
  fam.phi = bump_field(phi_radius);
  fam.u = sum(fam.bubble, scale(epsilon, fam.phi));
  fam.kappa = (epsilon == 0.0) ? KappaField::constant(1.0)
                               : induced_kappa(fam.u, params);

  // gradient collinearity: |u'| must equal |U'| + eps |phi'| on the support
  for (int i = 1; i <= 32; ++i) {
    const double r = phi_radius * i / 33.0;
    const double lhs = std::abs(fam.u.derivative(r));
    const double rhs = std::abs(fam.bubble.derivative(r)) + epsilon * std::abs(fam.phi.derivative(r));
    if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, rhs))
      throw DomainError("make_perturbed: gradient collinearity violated");
  }
  return fam;
}

double dual_lower_bound(const RadialField& u, const Params& params, const QuadConfig& cfg_in,
                        int dictionary_size, Execution exec) {
  if (dictionary_size < 1) throw DomainError("dual_lower_bound: dictionary must be nonempty");
  // the pairing cancels two order-one contributions pointwise; panel error
  // estimates bottom out near machine precision of that magnitude
  QuadConfig cfg = cfg_in;
  cfg.abs_tol = std::max(cfg.abs_tol, 1e-14);
  cfg.rel_tol = std::max(cfg.rel_tol, 1e-10);
  const auto dict = build_dictionary(params, cfg, dictionary_size, exec);

  const double p = params.p;
  const double psm1 = params.p_star - 1.0;
  double best = 0.0;
  for (const auto& e : dict) {
    // weak-form pairing against the normalized profile in one quadrature,
    // so the two large contributions cancel pointwise
    RadialIntegrand in;
    in.f = [&](double r) {
      const double du = u.derivative(r);
      const double de = e.field.derivative(r);
      const double stress = std::pow(std::abs(du), p - 2.0) * du;
      return (-stress * de + std::pow(u.value(r), psm1) * e.field.value(r)) / e.grad_norm;
    };
    in.tail_exponent = std::min((p - 1.0) * params.decay_grad() + params.decay_grad(),
                                psm1 * params.decay_u() + params.decay_u());
    const double val = std::abs(integrate_radial(in, params.n, cfg, exec).value);
    best = std::max(best, val);
  }
  return best;
}

ProjectionResult projection_distance(const RadialField& u, const Params& params,
                                     const QuadConfig& cfg, Execution exec) {
  const double p = params.p;
  const double u0 = u.value(0.0);
  if (!(u0 > 0.0)) throw DomainError("projection_distance: needs a positive center value");

  auto objective = [&](double a, double logb) {
    const TalentiElement e{a, std::exp(logb)};
    const RadialField t = talenti_field(params, e);
    RadialIntegrand in;
    in.f = [&, p](double r) {
      return std::pow(std::abs(u.derivative(r) - t.derivative(r)), p);
    };
    in.tail_exponent = p * params.decay_grad();
    return std::pow(integrate_radial(in, params.n, cfg, exec).value, 1.0 / p);
  };

  ProjectionResult out;
  out.distance = 1e300;

  const double starts[3][2] = {{u0, 0.0}, {1.2 * u0, std::log(2.0)}, {0.8 * u0, -std::log(2.0)}};
  for (const auto& s0 : starts) {
    double a = s0[0], logb = s0[1];
    double cur = objective(a, logb);
    std::vector<double> trace{cur};
    for (int iter = 0; iter < 40; ++iter) {
      const double a_lo = a / 3.0, a_hi = 3.0 * a;
      a = golden_min([&](double aa) { return objective(aa, logb); }, a_lo, a_hi,
                     1e-9 * std::max(1.0, a));
      logb = golden_min([&](double lb) { return objective(a, lb); }, logb - 1.1,
                        logb + 1.1, 1e-9);
      const double next = objective(a, logb);
      if (next <= cur) trace.push_back(next);
      const double gain = cur - next;
      cur = std::min(cur, next);
      if (gain < 1e-12 * std::max(cur, 1e-30) && iter >= 2) break;
    }
    if (cur < out.distance) {
      out.distance = cur;
      out.best = TalentiElement{a, std::exp(logb)};
      out.trace = std::move(trace);
    }
  }
  out.stalled = out.trace.size() > 1 && out.trace.back() > out.trace.front();
  return out;
}

DecayEnvelope decay_envelope(const RadialField& u, const Params& params) {
  DecayEnvelope env;
  const double eu = params.decay_u();
  const double eg = params.decay_grad();

  double lo = 1e300, hi = 0.0, hig = 0.0;
  double first = 0.0, last = 0.0;
  const int npts = 200;
  for (int i = 0; i <= npts; ++i) {
    const double r = std::pow(10.0, -2.0 + 5.0 * static_cast<double>(i) / npts);
    const double val = u.value(r);
    if (i == 0) first = val;
    if (i == npts) last = val;
    lo = std::min(lo, val * (1.0 + std::pow(r, eu)));
    hi = std::max(hi, val * (1.0 + std::pow(r, eu)));
    hig = std::max(hig, std::abs(u.derivative(r)) * (1.0 + std::pow(r, eg)));
  }

  if (!(first > 0.0) || !(std::abs(last) < 0.5 * std::abs(first))) {
    env.reason = "field does not decay on the fitted range";
    return env;
  }
  if (!(lo > 0.0) || hi / lo > 1e6) {
    env.reason = "envelope spread too large for a power-law profile";
    return env;
  }
  env.ok = true;
  env.c0 = lo;
  env.C0 = hi;
  env.C1 = hig;
  env.violations = 0;  // fitted as extrema, violation-free by construction
  return env;
}

SlopeFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw DomainError("fit_loglog: need at least two matching samples");

  auto fit = [](const std::vector<double>& lx, const std::vector<double>& ly) {
    const size_t n = lx.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    SlopeFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double resid = ly[i] - (f.intercept + f.slope * lx[i]);
      ss += resid * resid;
    }
    f.rms = std::sqrt(ss / n);
    return f;
  };

  std::vector<double> lx, ly;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw DomainError("fit_loglog: samples must be positive");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }

  SlopeFit f = fit(lx, ly);

  // asymptotic-regime guard: refit without the largest-x sample and drop it
  // for good when it sits far off that line (a full-fit RMS would be inflated
  // by the outlier itself)
  if (lx.size() >= 4) {
    size_t imax = 0;
    for (size_t i = 1; i < lx.size(); ++i)
      if (lx[i] > lx[imax]) imax = i;
    std::vector<double> rx = lx, ry = ly;
    rx.erase(rx.begin() + static_cast<long>(imax));
    ry.erase(ry.begin() + static_cast<long>(imax));
    const SlopeFit rest = fit(rx, ry);
    const double resid = std::abs(ly[imax] - (rest.intercept + rest.slope * lx[imax]));
    if (resid > 3.0 * std::max(rest.rms, 1e-6)) {
      f = rest;
      f.dropped_largest = true;
    }
  }
  return f;
}

SweepResult run_sweep(const SweepConfig& cfg, Execution exec) {
  if (cfg.epsilon_grid.size() < 2)
    throw DomainError("run_sweep: need at least two epsilon values");
  for (size_t i = 0; i < cfg.epsilon_grid.size(); ++i) {
    if (!(cfg.epsilon_grid[i] > 0.0) || cfg.epsilon_grid[i] >= 1.0)
      throw DomainError("run_sweep: epsilon values must lie in (0, 1)");
    if (i > 0 && !(cfg.epsilon_grid[i] < cfg.epsilon_grid[i - 1]))
      throw DomainError("run_sweep: epsilon grid must be strictly decreasing");
  }

  SweepResult res;
  res.quad_id = cfg.quad.id();

  const SobolevLevel level = sobolev_level(cfg.params, cfg.quad, exec);
  res.sobolev_level_s = level.s;
  const RadialField phi = bump_field(cfg.phi_radius);
  res.grad_phi_norm = norm_grad_lp(phi, cfg.params, cfg.quad, exec);
  const double u_base_mass_pow =
      std::pow(norm_lpstar(bubble_field(cfg.params, cfg.lambda), cfg.params, cfg.quad, exec),
               cfg.params.p_star - 1.0);

  const int count = static_cast<int>(cfg.epsilon_grid.size());
  res.records.assign(static_cast<size_t>(count), SweepRecord{});

  auto compute_one = [&](int i) {
    SweepRecord rec;
    rec.epsilon = cfg.epsilon_grid[static_cast<size_t>(i)];
    try {
      const PerturbedFamily fam =
          make_perturbed(cfg.params, cfg.lambda, rec.epsilon, cfg.phi_radius);
      rec.lhs_norm = rec.epsilon * res.grad_phi_norm;
      // absolute floor scaled to the expected size, so the difference norm is
      // resolved to ~1e-9 relative even at the smallest epsilon
      QuadConfig lhs_quad = cfg.quad;
      lhs_quad.abs_tol =
          std::min(lhs_quad.abs_tol, 1e-9 * std::pow(rec.lhs_norm, cfg.params.p));
      rec.lhs_norm_quadrature =
          norm_grad_lp(difference(fam.u, fam.bubble), cfg.params, lhs_quad, exec);

      const Kappa0Result k0 = kappa0_quotients(fam.u, fam.kappa, cfg.params, cfg.quad, exec);
      rec.kappa0 = k0.value;
      rec.deficit_cfm = deficit_cfm(fam.u, fam.kappa, cfg.params, cfg.quad, exec);
      rec.sobolev_deficit = sobolev_deficit(fam.u, cfg.params, cfg.quad, exec, &level);

      const ProjectionResult proj = projection_distance(fam.u, cfg.params, cfg.quad, exec);
      rec.projection_distance = proj.distance;

      const ExtractionReport ext =
          extract(fam.u, fam.kappa, cfg.params, cfg.quad, cfg.extract, exec);
      rec.extraction_error = ext.err_total;
      rec.lambda_hat = ext.lambda;
      rec.err_interior = ext.err_interior;
      rec.err_exterior = ext.err_exterior;

      rec.dual_lower_bound =
          dual_lower_bound(fam.u, cfg.params, cfg.quad, cfg.dictionary_size, exec);

      rec.weighted = weighted_diagnostics(fam.u, fam.kappa, cfg.params, cfg.quad,
                                          cfg.weighted_t_exp, ext.schedule.t, 0.0, exec);

      // consistency across modules: the dual bound is controlled by the
      // deficit plus the kappa0 offset term, both shrunk by 1/S
      const double cap = (rec.deficit_cfm + std::abs(1.0 - rec.kappa0) * u_base_mass_pow) /
                             level.s * (1.0 + 1e-6) +
                         10.0 * cfg.quad.abs_tol;
      rec.dual_consistency_ok = rec.dual_lower_bound <= cap * (1.0 + 0.05);
    } catch (const std::exception& ex) {
      rec.failed = true;
      rec.error = ex.what();
    }
    res.records[static_cast<size_t>(i)] = rec;
  };

  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) compute_one(i);
  } else {
    for (int i = 0; i < count; ++i) compute_one(i);
  }

  // slope fits over the successful records, assembled in grid order
  std::vector<double> eps;
  std::map<std::string, std::vector<double>> cols;
  for (const SweepRecord& r : res.records) {
    if (r.failed) continue;
    eps.push_back(r.epsilon);
    cols["lhs_norm"].push_back(r.lhs_norm);
    cols["deficit_cfm"].push_back(r.deficit_cfm);
    cols["sobolev_deficit"].push_back(r.sobolev_deficit);
    cols["extraction_error"].push_back(r.extraction_error);
    cols["dual_lower_bound"].push_back(r.dual_lower_bound);
  }
  if (eps.size() >= 2)
    for (const auto& [name, ys] : cols) res.slopes[name] = fit_loglog(eps, ys);

  res.figalli_zhang_c = 1e300;
  const double expo = std::max(2.0, cfg.params.p);
  for (const SweepRecord& r : res.records) {
    if (r.failed || !(r.projection_distance > 0.0)) continue;
    res.figalli_zhang_c =
        std::min(res.figalli_zhang_c, r.sobolev_deficit / std::pow(r.projection_distance, expo));
  }
  if (res.figalli_zhang_c == 1e300) res.figalli_zhang_c = 0.0;
  return res;
}

}  // namespace pstab
