// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, not configurable.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pstab/bubble.hpp"
#include "pstab/deficit.hpp"
#include "pstab/extraction.hpp"
#include "pstab/identity_check.hpp"
#include "pstab/lab.hpp"
#include "pstab/matrix_check.hpp"
#include "pstab/norms.hpp"
#include "pstab/pfunction.hpp"
#include "pstab/report.hpp"

using namespace pstab;

namespace {

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;
  std::function<bool(std::string&)> body;
};

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

const std::vector<std::pair<int, double>> kGrid = {{4, 2.0}, {5, 2.0}, {4, 3.0}, {9, 3.0}};
const std::vector<double> kLambdas = {0.5, 1.0, 2.0};

// shared state across criteria (the sweep feeds 8, 9, and 10)
SweepConfig sweep_config() {
  SweepConfig cfg;
  cfg.params = make_params(4, 2.0);
  cfg.quad.rel_tol = 1e-12;
  cfg.quad.abs_tol = 1e-18;
  cfg.epsilon_grid = {1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  cfg.dictionary_size = 12;
  cfg.seed = 42;
  return cfg;
}

SweepResult g_sweep;
bool g_sweep_ready = false;

std::string sweep_csv(const SweepResult& res, const std::string& quad_id) {
  CsvTable table({"epsilon", "lhs_norm", "deficit_cfm", "sobolev_deficit",
                  "projection_distance", "extraction_error", "dual_lower_bound", "lambda_hat",
                  "err_interior", "err_exterior"},
                 quad_id);
  for (const auto& r : res.records)
    table.add_row({r.epsilon, r.lhs_norm, r.deficit_cfm, r.sobolev_deficit,
                   r.projection_distance, r.extraction_error, r.dual_lower_bound,
                   r.lambda_hat, r.err_interior, r.err_exterior});
  return table.to_string();
}

std::string matrix_csv(const MatrixCheckReport& rep, uint64_t seed) {
  CsvTable table({"dim", "trials", "max_slack_antisym", "max_slack_trace", "violations"},
                 "seed=" + std::to_string(seed));
  for (const auto& d : rep.dims)
    table.add_row({static_cast<double>(d.dim), static_cast<double>(d.trials),
                   d.max_slack_antisym, d.max_slack_trace,
                   static_cast<double>(d.violations)});
  return table.to_string();
}

// --- criteria -------------------------------------------------------------

bool crit1_bubble_exactness(std::string& detail) {
  double worst = 0.0;
  for (const auto& [n, p] : kGrid) {
    const Params pr = make_params(n, p);
    for (double lambda : kLambdas) {
      const RadialField u = bubble_field(pr, lambda);
      for (int i = 0; i < 64; ++i) {
        const double r = std::pow(10.0, -3.0 + 6.0 * i / 63.0);
        const double rhs = std::pow(u.value(r), pr.p_star - 1.0);
        worst = std::max(worst, std::abs(p_laplacian(u, pr, r) + rhs) / rhs);
      }
    }
  }
  detail = fmt("max relative residual %.3g (tol 1e-8)", worst);
  return worst < 1e-8;
}

bool crit2_energy_identity(std::string& detail) {
  QuadConfig quad;
  double worst_gap = 0.0;
  double gap42 = 0.0;
  for (const auto& [n, p] : kGrid) {
    const Params pr = make_params(n, p);
    for (double lambda : kLambdas) {
      const RadialField u = bubble_field(pr, lambda);
      RadialIntegrand gi, mi;
      gi.f = [&, pp = pr.p](double r) { return std::pow(std::abs(u.derivative(r)), pp); };
      gi.tail_exponent = pr.p * pr.decay_grad();
      mi.f = [&, ps = pr.p_star](double r) { return std::pow(u.value(r), ps); };
      mi.tail_exponent = pr.p_star * pr.decay_u();
      const double grad = integrate_radial(gi, pr.n, quad).value;
      const double mass = integrate_radial(mi, pr.n, quad).value;
      worst_gap = std::max(worst_gap, std::abs(grad - mass) / grad);
      if (n == 4 && p == 2.0) {
        const double oracle = 32.0 * M_PI * M_PI / 3.0;
        gap42 = std::max({gap42, std::abs(grad - oracle) / oracle,
                          std::abs(mass - oracle) / oracle});
      }
    }
  }
  detail = fmt("max identity gap %.3g, (4,2) oracle gap %.3g (tol 1e-6)", worst_gap, gap42);
  return worst_gap < 1e-6 && gap42 < 1e-6;
}

bool crit3_symmetry(std::string& detail) {
  const Params pr = make_params(4, 2.0);
  QuadConfig quad;

  double worst_comp = 0.0;
  const PerturbedFamily fam = make_perturbed(pr, 1.0, 1e-2, 1.0);
  for (double lambda : {0.5, 2.0, 3.0}) {
    const RadialField back =
        transform(transform(fam.u, 0.0, lambda, pr), 0.0, 1.0 / lambda, pr);
    for (int i = 0; i <= 32; ++i) {
      const double r = 1e-2 * std::pow(1e4, i / 32.0);
      worst_comp =
          std::max(worst_comp, std::abs(back.value(r) - fam.u.value(r)) /
                                   std::abs(fam.u.value(r)));
    }
  }

  double worst_norm = 0.0;
  const double mass0 = norm_lpstar(fam.u, pr, quad);
  const double grad0 = norm_grad_lp(fam.u, pr, quad);
  for (double lambda : {0.5, 2.0}) {
    const RadialField t = transform(fam.u, 0.0, lambda, pr);
    worst_norm = std::max(worst_norm,
                          std::abs(norm_lpstar(t, pr, quad) - mass0) / mass0);
    worst_norm = std::max(worst_norm,
                          std::abs(norm_grad_lp(t, pr, quad) - grad0) / grad0);
  }

  double worst_inv = 0.0;
  const double d0 = deficit_cfm(fam.u, fam.kappa, pr, quad);
  const double k0 = kappa0(fam.u, fam.kappa, pr, quad);
  for (double lambda : {0.5, 2.0}) {
    const RadialField tu = transform(fam.u, 0.0, lambda, pr);
    const KappaField tk = fam.kappa.dilated(lambda);
    worst_inv = std::max(worst_inv, std::abs(deficit_cfm(tu, tk, pr, quad) - d0) / d0);
    worst_inv = std::max(worst_inv, std::abs(kappa0(tu, tk, pr, quad) - k0) / k0);
  }

  detail = fmt("composition %.3g (tol 1e-13), norms %.3g, invariance %.3g (tol 1e-6)",
               worst_comp, worst_norm, worst_inv);
  return worst_comp < 1e-13 && worst_norm < 1e-6 && worst_inv < 1e-6;
}

bool crit4_pfunction(std::string& detail) {
  double worst_spread = 0.0, worst_ring = 0.0, worst_trace = 0.0;
  for (const auto& [n, p] : kGrid) {
    const Params pr = make_params(n, p);
    for (double lambda : kLambdas) {
      const VField vf = v_of_u(bubble_field(pr, lambda), pr);
      double lo = 1e300, hi = -1e300;
      for (int i = 0; i < 200; ++i) {
        const double r = std::pow(10.0, -3.0 + 6.0 * i / 199.0);
        const double pv = p_function(vf, r);
        lo = std::min(lo, pv);
        hi = std::max(hi, pv);
        worst_ring = std::max(worst_ring, w_components(vf, r).ring_norm2);
      }
      worst_spread = std::max(worst_spread, (hi - lo) / std::abs(lo));
    }
  }

  const Params pr = make_params(4, 2.0);
  for (double eps : {1e-3, 1e-2}) {
    const PerturbedFamily fam = make_perturbed(pr, 1.0, eps, 1.0);
    const VField vf = v_of_u(fam.u, pr);
    for (int i = 0; i < 64; ++i) {
      const double r = std::pow(10.0, -2.0 + 4.0 * i / 63.0);
      const WComponents wc = w_components(vf, r);
      const PValue pv = p_and_remainder(vf, fam.kappa, r);
      worst_trace = std::max(worst_trace, std::abs(wc.tr_w - (pv.p + pv.remainder)) /
                                              std::abs(wc.tr_w));
    }
  }

  detail = fmt("P spread %.3g (tol 1e-10), |W ring|^2 %.3g (tol 1e-18), trace %.3g (tol 1e-8)",
               worst_spread, worst_ring, worst_trace);
  return worst_spread < 1e-10 && worst_ring < 1e-18 && worst_trace < 1e-8;
}

bool crit5_matrix(std::string& detail) {
  MatrixCheckConfig cfg;
  cfg.trials = 10000;
  cfg.seed = 42;
  const MatrixCheckReport rep = matrix_inequality_check(cfg);
  double worst = -1e300;
  for (const auto& d : rep.dims)
    worst = std::max({worst, d.max_slack_antisym, d.max_slack_trace});
  detail = fmt("violations %d, worst slack %.3g (tol 1e-10), c monotone %s",
               rep.total_violations, worst, rep.c_monotone ? "yes" : "no");
  return rep.total_violations == 0 && rep.c_monotone;
}

bool crit6_identity(std::string& detail) {
  const Params p42 = make_params(4, 2.0);
  const RadialField quad_profile = power_term_field(1.0, 1.0, 2.0);
  const RadialField bubble_v = v_of_u(bubble_field(p42, 1.0), p42).v;

  struct Combo {
    const RadialField* w;
    double p;
    int n;
  };
  const Combo combos[] = {{&quad_profile, 2.0, 3}, {&quad_profile, 4.0, 4},
                          {&bubble_v, 2.0, 4}};
  double worst = 0.0;
  for (const auto& c : combos)
    for (int i = 0; i < 20; ++i) {
      const double r = 0.5 + 2.0 * i / 19.0;  // keeps |w'| above the floor
      worst = std::max(worst, identity_residual(*c.w, c.p, c.n, r).residual);
    }
  detail = fmt("max relative residual %.3g (tol 1e-5)", worst);
  return worst < 1e-5;
}

bool crit7_extraction(std::string& detail) {
  QuadConfig quad;
  quad.rel_tol = 1e-11;
  double worst_lambda = 0.0;
  for (const auto& [n, p] : {std::pair{4, 2.0}, {5, 2.0}, {4, 3.0}}) {
    const Params pr = make_params(n, p);
    for (double lambda : kLambdas) {
      const ExtractionReport rep =
          extract(bubble_field(pr, lambda), KappaField::constant(1.0), pr, quad);
      worst_lambda = std::max(worst_lambda, std::abs(rep.lambda - lambda) / lambda);
    }
  }

  const Params pr = make_params(4, 2.0);
  const PerturbedFamily fam = make_perturbed(pr, 1.0, 1e-3, 1.0);
  const ExtractionReport rep = extract(fam.u, fam.kappa, pr, quad);
  const double lam_gap = std::abs(rep.lambda - 1.0);
  const double bound = 10.0 * 1e-3 * norm_grad_lp(fam.phi, pr, quad);

  detail = fmt("round-trip lambda %.3g (tol 1e-6); perturbed lambda gap %.3g (tol 0.05), "
               "err %.3g <= %.3g",
               worst_lambda, lam_gap, rep.err_total, bound);
  return worst_lambda < 1e-6 && lam_gap < 0.05 && rep.err_total <= bound;
}

bool crit8_sweep(std::string& detail) {
  const SweepConfig cfg = sweep_config();
  g_sweep = run_sweep(cfg);
  g_sweep_ready = true;

  for (const auto& r : g_sweep.records)
    if (r.failed) {
      detail = "record failed: " + r.error;
      return false;
    }

  const double s_lhs = g_sweep.slopes.at("lhs_norm").slope;
  const double s_def = g_sweep.slopes.at("deficit_cfm").slope;
  const double s_dual = g_sweep.slopes.at("dual_lower_bound").slope;
  const double s_sob = g_sweep.slopes.at("sobolev_deficit").slope;

  bool monotone = true;
  for (size_t i = 1; i < g_sweep.records.size(); ++i)
    monotone = monotone && g_sweep.records[i].extraction_error <=
                               g_sweep.records[i - 1].extraction_error * (1.0 + 1e-9);

  detail = fmt("slopes: lhs %.8f, deficit %.3f, dual %.3f, sobolev %.3f; extraction %s",
               s_lhs, s_def, s_dual, s_sob, monotone ? "monotone" : "NOT monotone");
  return std::abs(s_lhs - 1.0) < 1e-6 && std::abs(s_def - 1.0) < 0.1 &&
         std::abs(s_dual - 1.0) < 0.15 && std::abs(s_sob - 2.0) < 0.3 && monotone;
}

bool crit9_weighted(std::string& detail) {
  const Params pr = make_params(4, 2.0);
  QuadConfig quad;
  quad.abs_tol = 1e-18;

  const WeightedDiagnostics clean =
      weighted_diagnostics(bubble_field(pr, 1.0), KappaField::constant(1.0), pr, quad, 1.0,
                           0.5, 50.0);
  const double abs_tol = 1e-10;
  const bool vanish = std::abs(clean.i_ring) < abs_tol && std::abs(clean.i_gradp) < abs_tol &&
                      std::abs(clean.i_dev_q2) < abs_tol && std::abs(clean.i_dev_q1) < 1e-6;

  if (!g_sweep_ready) {
    detail = "sweep unavailable";
    return false;
  }

  // Paper-normalized ratios must not grow as the deficit vanishes, and the
  // family-normalized ratios must stay within one decade overall.
  double blowup = 0.0;
  double stable_lo[4] = {1e300, 1e300, 1e300, 1e300};
  double stable_hi[4] = {0.0, 0.0, 0.0, 0.0};
  const auto& first = g_sweep.records.front();  // largest epsilon
  const auto& last = g_sweep.records.back();
  auto paper_ratios = [](const SweepRecord& r) {
    const double d = r.deficit_cfm;
    return std::array<double, 4>{r.weighted.i_ring / d, r.weighted.i_gradp / d,
                                 r.weighted.i_dev_q1 / std::sqrt(d),
                                 r.weighted.i_dev_q2 / d};
  };
  const auto pr_first = paper_ratios(first);
  const auto pr_last = paper_ratios(last);
  for (int k = 0; k < 4; ++k) blowup = std::max(blowup, pr_last[k] / pr_first[k]);

  for (const auto& r : g_sweep.records) {
    const double d = r.deficit_cfm;
    const double stable[4] = {r.weighted.i_ring / (d * d), r.weighted.i_gradp / (d * d),
                              r.weighted.i_dev_q1 / d, r.weighted.i_dev_q2 / (d * d)};
    for (int k = 0; k < 4; ++k) {
      stable_lo[k] = std::min(stable_lo[k], stable[k]);
      stable_hi[k] = std::max(stable_hi[k], stable[k]);
    }
  }
  double spread = 0.0;
  for (int k = 0; k < 4; ++k) spread = std::max(spread, stable_hi[k] / stable_lo[k]);

  detail = fmt("bubble integrals vanish %s; ratio growth x%.3g (tol 10), "
               "stable-ratio spread x%.3g (tol 10)",
               vanish ? "yes" : "NO", blowup, spread);
  return vanish && blowup < 10.0 && spread < 10.0;
}

bool crit10_determinism(std::string& detail) {
  MatrixCheckConfig mc;
  mc.trials = 10000;
  mc.seed = 42;
  const std::string m1 = matrix_csv(matrix_inequality_check(mc), mc.seed);
  const std::string m2 = matrix_csv(matrix_inequality_check(mc), mc.seed);

  if (!g_sweep_ready) {
    detail = "sweep unavailable";
    return false;
  }
  const SweepConfig cfg = sweep_config();
  const SweepResult again = run_sweep(cfg);
  const std::string s1 = sweep_csv(g_sweep, cfg.quad.id());
  const std::string s2 = sweep_csv(again, cfg.quad.id());

  detail = fmt("matrix csv identical %s, sweep csv identical %s",
               m1 == m2 ? "yes" : "NO", s1 == s2 ? "yes" : "NO");
  return m1 == m2 && s1 == s2;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "bubble exactness", 1.0, crit1_bubble_exactness},
      {2, "energy identity", 5.0, crit2_energy_identity},
      {3, "symmetry suite", 5.0, crit3_symmetry},
      {4, "pressure invariants", 2.0, crit4_pfunction},
      {5, "matrix inequalities", 2.0, crit5_matrix},
      {6, "differential identity", 2.0, crit6_identity},
      {7, "extraction round trip", 10.0, crit7_extraction},
      {8, "perturbation sweep", 60.0, crit8_sweep},
      {9, "weighted diagnostics", 60.0, crit9_weighted},
      {10, "determinism", 0.0, crit10_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.body(detail);
    } catch (const std::exception& ex) {
      detail = std::string("exception: ") + ex.what();
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.time_limit_s <= 0.0 || dt <= c.time_limit_s;
    if (!in_time) detail += fmt(" [over %gs budget]", c.time_limit_s);
    const bool pass = ok && in_time;
    std::printf("%s %2d %-24s %7.2fs  %s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                dt, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
