// Batch front door: reads a strict JSON config plus dotted-key overrides,
// runs one named experiment, and emits a CSV table, a JSON report, and
// (for sweeps) a log-log SVG. Exit codes: 0 all checks pass, 1 some check
// failed, 2 configuration or I/O error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pstab/bubble.hpp"
#include "pstab/deficit.hpp"
#include "pstab/errors.hpp"
#include "pstab/extraction.hpp"
#include "pstab/identity_check.hpp"
#include "pstab/lab.hpp"
#include "pstab/matrix_check.hpp"
#include "pstab/norms.hpp"
#include "pstab/pfunction.hpp"
#include "pstab/report.hpp"

using nlohmann::json;
using namespace pstab;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json default_config() {
  return json{
      {"command", ""},
      {"params", {{"n", 4}, {"p", 2.0}}},
      {"family",
       {{"lambda", 1.0},
        {"epsilon", 1e-3},
        {"epsilon_grid", json::array({1e-2, 3e-3, 1e-3, 3e-4, 1e-4})},
        {"phi_radius", 1.0}}},
      {"quad",
       {{"rel_tol", 1e-10},
        {"abs_tol", 1e-14},
        {"r_cut", 1e3},
        {"tail_policy", "power"},
        {"max_subdivisions", 20000}}},
      {"schedule", {{"t", 0.0}, {"alpha", 0.5}, {"r_big", 0.0}}},
      {"matrix", {{"trials", 10000}, {"dim_min", 2}, {"dim_max", 6}}},
      {"identity",
       {{"radii", json::array({0.5, 1.0, 2.0})},
        {"fd_step", 1e-4}}},
      {"output", {{"dir", ""}, {"prefix", "run"}, {"svg", true}}},
      {"dictionary_size", 12},
      {"weighted_t_exp", 1.0},
      {"seed", 42}};
}

void check_keys(const json& obj, const json& allowed, const std::string& path) {
  if (!obj.is_object()) return;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.contains(it.key()))
      throw ConfigError("unknown config key: " + path + it.key());
    if (it.value().is_object()) check_keys(it.value(), allowed.at(it.key()), path + it.key() + ".");
  }
}

json merge(const json& base, const json& user, const std::string& path) {
  json out = base;
  for (auto it = user.begin(); it != user.end(); ++it) {
    if (!out.contains(it.key())) throw ConfigError("unknown config key: " + path + it.key());
    if (it.value().is_object() && out[it.key()].is_object())
      out[it.key()] = merge(out[it.key()], it.value(), path + it.key() + ".");
    else
      out[it.key()] = it.value();
  }
  return out;
}

json parse_scalar(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  try {
    size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos == text.size()) {
      if (v == static_cast<long long>(v) && text.find_first_of(".eE") == std::string::npos)
        return static_cast<long long>(v);
      return v;
    }
  } catch (...) {
  }
  return text;
}

void apply_override(json& cfg, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw ConfigError("override must look like key.path=value");
  std::string path = spec.substr(0, eq);
  const json value = parse_scalar(spec.substr(eq + 1));

  json* node = &cfg;
  size_t start = 0;
  while (true) {
    const size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (!node->contains(key)) throw ConfigError("unknown config key in override: " + path);
    if (dot == std::string::npos) {
      (*node)[key] = value;
      break;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

QuadConfig quad_from(const json& cfg) {
  QuadConfig q;
  q.rel_tol = cfg.at("quad").at("rel_tol").get<double>();
  q.abs_tol = cfg.at("quad").at("abs_tol").get<double>();
  q.r_cut = cfg.at("quad").at("r_cut").get<double>();
  q.max_subdivisions = cfg.at("quad").at("max_subdivisions").get<int>();
  const std::string tail = cfg.at("quad").at("tail_policy").get<std::string>();
  if (tail == "power")
    q.tail_policy = TailPolicy::analytic_power_tail;
  else if (tail == "truncate")
    q.tail_policy = TailPolicy::hard_truncate;
  else
    throw ConfigError("quad.tail_policy must be 'power' or 'truncate'");
  if (!(q.rel_tol > 0.0) || !(q.abs_tol > 0.0) || !(q.r_cut > 0.0))
    throw ConfigError("quad tolerances and r_cut must be positive");
  return q;
}

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double tolerance = 0.0;
};

json checks_to_json(const std::vector<Check>& checks) {
  json arr = json::array();
  for (const auto& c : checks)
    arr.push_back(json{{"name", c.name}, {"pass", c.pass}, {"value", c.value},
                       {"tolerance", c.tolerance}});
  return arr;
}

struct Outputs {
  std::map<std::string, std::string> files;  // path -> content, written on success
};

void flush_outputs(const Outputs& out) {
  for (const auto& [path, content] : out.files) write_text_file(path, content);
}

std::string out_path(const json& cfg, const std::string& name) {
  std::string dir = cfg.at("output").at("dir").get<std::string>();
  if (dir.empty()) {
    const char* env = std::getenv("PSTAB_OUTPUT_DIR");
    dir = env ? env : ".";
  }
  std::filesystem::create_directories(dir);
  return dir + "/" + cfg.at("output").at("prefix").get<std::string>() + "_" + name;
}

// ---------------------------------------------------------------------------

int cmd_bubble_check(const json& cfg, Execution exec, Outputs& out, json& report) {
  const Params pr = make_params(cfg.at("params").at("n").get<int>(),
                                cfg.at("params").at("p").get<double>());
  const QuadConfig quad = quad_from(cfg);
  std::vector<Check> checks;

  CsvTable table({"n", "p", "lambda", "max_pde_residual", "grad_energy", "mass_pstar",
                  "energy_rel_gap", "s_pow_n", "s"},
                 quad.id());

  const SobolevLevel level = sobolev_level(pr, quad, exec);
  for (double lambda : {0.5, 1.0, 2.0}) {
    const RadialField u = bubble_field(pr, lambda);
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) {
      const double r = std::pow(10.0, -3.0 + 6.0 * i / 63.0);
      const double lap = p_laplacian(u, pr, r);
      const double rhs = std::pow(u.value(r), pr.p_star - 1.0);
      worst = std::max(worst, std::abs(lap + rhs) / rhs);
    }
    RadialIntegrand gi, mi;
    gi.f = [u, p = pr.p](double r) { return std::pow(std::abs(u.derivative(r)), p); };
    gi.tail_exponent = pr.p * pr.decay_grad();
    mi.f = [u, ps = pr.p_star](double r) { return std::pow(u.value(r), ps); };
    mi.tail_exponent = pr.p_star * pr.decay_u();
    const double grad = integrate_radial(gi, pr.n, quad, exec).value;
    const double mass = integrate_radial(mi, pr.n, quad, exec).value;
    const double gap = std::abs(grad - mass) / grad;

    table.add_row({static_cast<double>(pr.n), pr.p, lambda, worst, grad, mass, gap,
                   level.s_pow_n, level.s});
    checks.push_back({"pde_residual_lambda_" + format_double(lambda), worst < 1e-8, worst, 1e-8});
    checks.push_back({"energy_identity_lambda_" + format_double(lambda), gap < 1e-6, gap, 1e-6});
  }

  out.files[out_path(cfg, "bubble_check.csv")] = table.to_string();
  report["checks"] = checks_to_json(checks);
  report["s_pow_n"] = level.s_pow_n;
  bool all = true;
  for (const auto& c : checks) all = all && c.pass;
  return all ? 0 : 1;
}

int cmd_deficit(const json& cfg, Execution exec, Outputs& out, json& report) {
  const Params pr = make_params(cfg.at("params").at("n").get<int>(),
                                cfg.at("params").at("p").get<double>());
  const QuadConfig quad = quad_from(cfg);
  const double lambda = cfg.at("family").at("lambda").get<double>();
  const double eps = cfg.at("family").at("epsilon").get<double>();
  const double rphi = cfg.at("family").at("phi_radius").get<double>();

  const PerturbedFamily fam = make_perturbed(pr, lambda, eps, rphi);
  const SobolevLevel level = sobolev_level(pr, quad, exec);
  const DeficitReport rep = deficit_report(fam.u, fam.kappa, pr, quad, exec, &level);

  CsvTable table({"n", "p", "lambda", "epsilon", "kappa0", "kappa0_energy_quotient",
                  "deficit_cfm", "sobolev_deficit", "energy", "window_lo", "window_hi",
                  "energy_window_ok"},
                 quad.id());
  table.add_row({static_cast<double>(pr.n), pr.p, lambda, eps, rep.kappa0,
                 rep.kappa0_energy_quotient, rep.deficit_cfm, rep.sobolev_deficit, rep.energy,
                 rep.window_lo, rep.window_hi, rep.energy_window_ok ? 1.0 : 0.0});
  out.files[out_path(cfg, "deficit.csv")] = table.to_string();

  std::vector<Check> checks;
  const double mismatch =
      std::abs(rep.kappa0 - rep.kappa0_energy_quotient) / std::max(rep.kappa0, 1e-300);
  checks.push_back({"kappa0_quotients_agree", mismatch < 1e-6, mismatch, 1e-6});
  checks.push_back({"deficit_nonnegative", rep.deficit_cfm >= 0.0, rep.deficit_cfm, 0.0});
  checks.push_back({"sobolev_deficit_nonnegative", rep.sobolev_deficit > -1e-9,
                    rep.sobolev_deficit, 1e-9});
  report["checks"] = checks_to_json(checks);
  report["deficit"] = {{"kappa0", rep.kappa0},
                       {"deficit_cfm", rep.deficit_cfm},
                       {"sobolev_deficit", rep.sobolev_deficit},
                       {"energy", rep.energy},
                       {"energy_window_ok", rep.energy_window_ok}};
  bool all = true;
  for (const auto& c : checks) all = all && c.pass;
  return all ? 0 : 1;
}

int cmd_extract(const json& cfg, Execution exec, Outputs& out, json& report) {
  const Params pr = make_params(cfg.at("params").at("n").get<int>(),
                                cfg.at("params").at("p").get<double>());
  const QuadConfig quad = quad_from(cfg);
  const double lambda = cfg.at("family").at("lambda").get<double>();
  const double eps = cfg.at("family").at("epsilon").get<double>();
  const double rphi = cfg.at("family").at("phi_radius").get<double>();

  ExtractConfig ec;
  ec.alpha = cfg.at("schedule").at("alpha").get<double>();
  ec.t_override = cfg.at("schedule").at("t").get<double>();
  ec.r_big_override = cfg.at("schedule").at("r_big").get<double>();

  const PerturbedFamily fam = make_perturbed(pr, lambda, eps, rphi);
  const ExtractionReport rep = extract(fam.u, fam.kappa, pr, quad, ec, exec);

  CsvTable table({"n", "p", "lambda_true", "epsilon", "lambda_hat", "p_bar", "v_at_x0",
                  "x0_radius", "deficit", "err_interior", "err_exterior", "err_total",
                  "schedule_t", "schedule_r_big"},
                 quad.id());
  table.add_row({static_cast<double>(pr.n), pr.p, lambda, eps, rep.lambda, rep.p_bar,
                 rep.v_at_x0, rep.x0_radius, rep.deficit, rep.err_interior, rep.err_exterior,
                 rep.err_total, rep.schedule.t, rep.schedule.r_big});
  out.files[out_path(cfg, "extract.csv")] = table.to_string();

  std::vector<Check> checks;
  checks.push_back({"lambda_positive", rep.lambda > 0.0, rep.lambda, 0.0});
  const double split_gap =
      std::abs(std::pow(rep.err_total, pr.p) -
               (std::pow(rep.err_interior, pr.p) + std::pow(rep.err_exterior, pr.p))) /
      std::max(std::pow(rep.err_total, pr.p), 1e-300);
  checks.push_back({"error_split_identity", split_gap < 1e-9, split_gap, 1e-9});
  if (eps == 0.0) {
    const double lrel = std::abs(rep.lambda - lambda) / lambda;
    checks.push_back({"round_trip_lambda", lrel < 1e-6, lrel, 1e-6});
  }
  report["checks"] = checks_to_json(checks);
  report["extraction"] = {{"lambda", rep.lambda},
                          {"p_bar", rep.p_bar},
                          {"err_total", rep.err_total},
                          {"deficit", rep.deficit},
                          {"energy_window_ok", rep.energy_window_ok},
                          {"x0_in_localization_ball", rep.x0_in_localization_ball},
                          {"schedule",
                           {{"t", rep.schedule.t},
                            {"r_big", rep.schedule.r_big},
                            {"m_exp", rep.schedule.m_exp},
                            {"q", rep.schedule.q},
                            {"frak_p", rep.schedule.frak_p},
                            {"alpha", rep.schedule.alpha},
                            {"t_clamped", rep.schedule.t_clamped},
                            {"r_clamped", rep.schedule.r_clamped}}}};
  bool all = true;
  for (const auto& c : checks) all = all && c.pass;
  return all ? 0 : 1;
}

int cmd_sweep(const json& cfg, Execution exec, Outputs& out, json& report) {
  SweepConfig sc;
  sc.params = make_params(cfg.at("params").at("n").get<int>(),
                          cfg.at("params").at("p").get<double>());
  sc.quad = quad_from(cfg);
  sc.lambda = cfg.at("family").at("lambda").get<double>();
  sc.phi_radius = cfg.at("family").at("phi_radius").get<double>();
  sc.epsilon_grid = cfg.at("family").at("epsilon_grid").get<std::vector<double>>();
  sc.dictionary_size = cfg.at("dictionary_size").get<int>();
  sc.weighted_t_exp = cfg.at("weighted_t_exp").get<double>();
  sc.seed = cfg.at("seed").get<uint64_t>();
  sc.extract.alpha = cfg.at("schedule").at("alpha").get<double>();
  sc.extract.t_override = cfg.at("schedule").at("t").get<double>();
  sc.extract.r_big_override = cfg.at("schedule").at("r_big").get<double>();

  const SweepResult res = run_sweep(sc, exec);

  CsvTable table({"epsilon", "lhs_norm", "deficit_cfm", "sobolev_deficit",
                  "projection_distance", "extraction_error", "dual_lower_bound", "lambda_hat",
                  "err_interior", "err_exterior"},
                 sc.quad.id());
  json records = json::array();
  for (const auto& r : res.records) {
    table.add_row({r.epsilon, r.lhs_norm, r.deficit_cfm, r.sobolev_deficit,
                   r.projection_distance, r.extraction_error, r.dual_lower_bound,
                   r.lambda_hat, r.err_interior, r.err_exterior});
    records.push_back(json{{"epsilon", r.epsilon},
                           {"lhs_norm", r.lhs_norm},
                           {"lhs_norm_quadrature", r.lhs_norm_quadrature},
                           {"kappa0", r.kappa0},
                           {"deficit_cfm", r.deficit_cfm},
                           {"sobolev_deficit", r.sobolev_deficit},
                           {"projection_distance", r.projection_distance},
                           {"extraction_error", r.extraction_error},
                           {"dual_lower_bound", r.dual_lower_bound},
                           {"lambda_hat", r.lambda_hat},
                           {"err_interior", r.err_interior},
                           {"err_exterior", r.err_exterior},
                           {"dual_consistency_ok", r.dual_consistency_ok},
                           {"weighted",
                            {{"p_bar", r.weighted.p_bar},
                             {"i_ring", r.weighted.i_ring},
                             {"i_gradp", r.weighted.i_gradp},
                             {"i_dev_q1", r.weighted.i_dev_q1},
                             {"i_dev_q2", r.weighted.i_dev_q2}}},
                           {"failed", r.failed},
                           {"error", r.error}});
  }
  out.files[out_path(cfg, "sweep.csv")] = table.to_string();

  json slopes;
  for (const auto& [name, fit] : res.slopes)
    slopes[name] = {{"slope", fit.slope},
                    {"intercept", fit.intercept},
                    {"rms", fit.rms},
                    {"dropped_largest", fit.dropped_largest}};
  report["slopes"] = slopes;
  report["records"] = records;
  report["figalli_zhang_c"] = res.figalli_zhang_c;
  report["grad_phi_norm"] = res.grad_phi_norm;

  std::vector<Check> checks;
  auto slope_check = [&](const std::string& name, double target, double tol) {
    const auto it = res.slopes.find(name);
    const double s = it == res.slopes.end() ? 0.0 : it->second.slope;
    checks.push_back({name + "_slope", std::abs(s - target) <= tol, s, tol});
  };
  slope_check("lhs_norm", 1.0, 1e-6);
  slope_check("deficit_cfm", 1.0, 0.1);
  slope_check("dual_lower_bound", 1.0, 0.15);
  slope_check("sobolev_deficit", 2.0, 0.3);

  bool monotone = true;
  for (size_t i = 1; i < res.records.size(); ++i)
    if (res.records[i].extraction_error >
        res.records[i - 1].extraction_error * (1.0 + 1e-9))
      monotone = false;
  checks.push_back({"extraction_error_monotone", monotone, monotone ? 1.0 : 0.0, 0.0});

  bool dual_ok = true, none_failed = true;
  for (const auto& r : res.records) {
    dual_ok = dual_ok && r.dual_consistency_ok;
    none_failed = none_failed && !r.failed;
  }
  checks.push_back({"dual_consistency", dual_ok, dual_ok ? 1.0 : 0.0, 0.0});
  checks.push_back({"all_records_computed", none_failed, none_failed ? 1.0 : 0.0, 0.0});
  checks.push_back({"figalli_zhang_c_positive", res.figalli_zhang_c > 0.0,
                    res.figalli_zhang_c, 0.0});
  report["checks"] = checks_to_json(checks);

  if (cfg.at("output").at("svg").get<bool>()) {
    std::vector<SvgSeries> series;
    auto add_series = [&](const std::string& name, auto getter) {
      SvgSeries s;
      s.label = name;
      for (const auto& r : res.records) {
        if (r.failed) continue;
        s.xs.push_back(r.epsilon);
        s.ys.push_back(getter(r));
      }
      const auto it = res.slopes.find(name);
      if (it != res.slopes.end()) {
        s.fitted_slope = it->second.slope;
        s.annotate_slope = true;
      }
      series.push_back(std::move(s));
    };
    add_series("lhs_norm", [](const SweepRecord& r) { return r.lhs_norm; });
    add_series("deficit_cfm", [](const SweepRecord& r) { return r.deficit_cfm; });
    add_series("sobolev_deficit", [](const SweepRecord& r) { return r.sobolev_deficit; });
    add_series("extraction_error", [](const SweepRecord& r) { return r.extraction_error; });
    add_series("dual_lower_bound", [](const SweepRecord& r) { return r.dual_lower_bound; });
    add_series("projection_distance",
               [](const SweepRecord& r) { return r.projection_distance; });
    out.files[out_path(cfg, "sweep.svg")] =
        svg_loglog("perturbation sweep", "epsilon", series);
  }

  bool all = true;
  for (const auto& c : checks) all = all && c.pass;
  return all ? 0 : 1;
}

int cmd_identity_check(const json& cfg, Execution exec, Outputs& out, json& report) {
  (void)exec;
  const QuadConfig quad = quad_from(cfg);
  const double h = cfg.at("identity").at("fd_step").get<double>();
  const std::vector<double> radii = cfg.at("identity").at("radii").get<std::vector<double>>();

  struct Combo {
    std::string name;
    RadialField w;
    double p;
    int n;
  };
  const Params p24 = make_params(4, 2.0);
  std::vector<Combo> combos;
  combos.push_back({"quadratic_p2_n3", power_term_field(1.0, 1.0, 2.0), 2.0, 3});
  combos.push_back({"quadratic_p4_n4", power_term_field(1.0, 1.0, 2.0), 4.0, 4});
  combos.push_back({"bubble_v_p2_n4", v_of_u(bubble_field(p24, 1.0), p24).v, 2.0, 4});

  CsvTable table({"combo", "p", "n", "r", "lhs", "rhs", "residual"}, quad.id());
  std::vector<Check> checks;
  for (const auto& c : combos) {
    double worst = 0.0;
    for (double r : radii) {
      const IdentityResidual res = identity_residual(c.w, c.p, c.n, r, h);
      worst = std::max(worst, res.residual);
      table.add_row_mixed({c.name, format_double(c.p), format_double(c.n), format_double(r),
                           format_double(res.lhs), format_double(res.rhs),
                           format_double(res.residual)});
    }
    checks.push_back({"identity_" + c.name, worst < 1e-5, worst, 1e-5});
  }
  out.files[out_path(cfg, "identity_check.csv")] = table.to_string();
  report["checks"] = checks_to_json(checks);
  bool all = true;
  for (const auto& c : checks) all = all && c.pass;
  return all ? 0 : 1;
}

int cmd_matrix_check(const json& cfg, Execution exec, Outputs& out, json& report) {
  MatrixCheckConfig mc;
  mc.trials = cfg.at("matrix").at("trials").get<int>();
  mc.dim_min = cfg.at("matrix").at("dim_min").get<int>();
  mc.dim_max = cfg.at("matrix").at("dim_max").get<int>();
  mc.seed = cfg.at("seed").get<uint64_t>();

  const MatrixCheckReport rep = matrix_inequality_check(mc, exec);

  CsvTable table({"dim", "trials", "max_slack_antisym", "max_slack_trace", "violations"},
                 "seed=" + std::to_string(mc.seed));
  for (const auto& d : rep.dims)
    table.add_row({static_cast<double>(d.dim), static_cast<double>(d.trials),
                   d.max_slack_antisym, d.max_slack_trace,
                   static_cast<double>(d.violations)});
  out.files[out_path(cfg, "matrix_check.csv")] = table.to_string();

  std::vector<Check> checks;
  checks.push_back({"zero_violations", rep.total_violations == 0,
                    static_cast<double>(rep.total_violations), 0.0});
  checks.push_back({"c_of_rho_decreasing", rep.c_monotone, rep.c_monotone ? 1.0 : 0.0, 0.0});
  report["checks"] = checks_to_json(checks);
  bool all = true;
  for (const auto& c : checks) all = all && c.pass;
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radial laboratory for the critical quasilinear equation"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  bool serial = false;

  const std::vector<std::string> commands = {"bubble-check", "deficit",      "extract",
                                             "sweep",        "identity-check", "matrix-check"};
  std::map<std::string, CLI::App*> subs;
  for (const auto& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("-c,--config", config_path, "JSON config file");
    sub->add_option("--set", overrides, "dotted-key override, e.g. quad.rel_tol=1e-9");
    sub->add_flag("--serial", serial, "run the serial reference kernels");
    subs[name] = sub;
  }

  CLI11_PARSE(app, argc, argv);

  std::string command;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) command = name;

  json cfg = default_config();
  try {
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) throw ConfigError("cannot open config file: " + config_path);
      json user = json::parse(is);
      check_keys(user, default_config(), "");
      cfg = merge(cfg, user, "");
    }
    for (const auto& o : overrides) apply_override(cfg, o);
    if (!cfg.at("command").get<std::string>().empty() &&
        cfg.at("command").get<std::string>() != command)
      throw ConfigError("config 'command' disagrees with the subcommand");
    cfg["command"] = command;
  } catch (const json::exception& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  }

  const Execution exec = serial ? Execution::serial : Execution::parallel;

  json report;
  report["config_echo"] = cfg;
  report["overrides"] = overrides;

  Outputs out;
  int rc = 2;
  try {
    if (command == "bubble-check")
      rc = cmd_bubble_check(cfg, exec, out, report);
    else if (command == "deficit")
      rc = cmd_deficit(cfg, exec, out, report);
    else if (command == "extract")
      rc = cmd_extract(cfg, exec, out, report);
    else if (command == "sweep")
      rc = cmd_sweep(cfg, exec, out, report);
    else if (command == "identity-check")
      rc = cmd_identity_check(cfg, exec, out, report);
    else if (command == "matrix-check")
      rc = cmd_matrix_check(cfg, exec, out, report);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }

  int pass = 0, fail = 0;
  for (const auto& c : report["checks"]) {
    if (c.at("pass").get<bool>())
      ++pass;
    else
      ++fail;
  }

  try {
    const std::string report_name =
        std::string(command) + "_report.json";
    std::string normalized = report_name;
    for (auto& ch : normalized)
      if (ch == '-') ch = '_';
    out.files[out_path(cfg, normalized)] = report.dump(2) + "\n";
    flush_outputs(out);
  } catch (const std::exception& ex) {
    std::cerr << "output error: " << ex.what() << "\n";
    return 2;
  }

  std::printf("%s %s: %d checks passed, %d failed\n", rc == 0 ? "PASS" : "FAIL",
              command.c_str(), pass, fail);
  return rc;
}
