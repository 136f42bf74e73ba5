#include "pstab/norms.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pstab/errors.hpp"

namespace pstab {

double norm_lp(const RadialField& f, double q, const Params& params, const QuadConfig& cfg,
               Execution exec, bool decaying_like_solution) {
  RadialIntegrand in;
  in.f = [f, q](double r) { return std::pow(std::abs(f.value(r)), q); };
  in.support_radius = f.support_radius();
  if (decaying_like_solution) in.tail_exponent = q * params.decay_u();
  return std::pow(integrate_radial(in, params.n, cfg, exec).value, 1.0 / q);
}

double norm_lpstar(const RadialField& f, const Params& params, const QuadConfig& cfg,
                   Execution exec) {
  return norm_lp(f, params.p_star, params, cfg, exec, /*decaying_like_solution=*/true);
}

double norm_grad_lp(const RadialField& f, const Params& params, const QuadConfig& cfg,
                    Execution exec) {
  RadialIntegrand in;
  const double p = params.p;
  in.f = [f, p](double r) { return std::pow(std::abs(f.derivative(r)), p); };
  in.support_radius = f.support_radius();
  in.tail_exponent = p * params.decay_grad();
  return std::pow(integrate_radial(in, params.n, cfg, exec).value, 1.0 / p);
}

double weighted_integral(const RadialField& v, double v_exp, const RadialField& target,
                         double q, const Params& params, const QuadConfig& cfg,
                         Execution exec) {
  RadialIntegrand in;
  in.f = [v, v_exp, target, q](double r) {
    return std::pow(v.value(r), v_exp) * std::pow(std::abs(target.value(r)), q);
  };
  in.support_radius = target.support_radius();
  return integrate_radial(in, params.n, cfg, exec).value;
}

double ball_mean_fn(const std::function<double(double)>& f, double t, const Params& params,
                    const QuadConfig& cfg, Execution exec) {
  if (!(t > 0.0)) throw DomainError("ball_mean: radius must be positive");
  const int n = params.n;
  auto g = [&](double r) { return f(r) * std::pow(r, n - 1); };
  const IntegralResult res = integrate_interval(g, 0.0, t, cfg, exec);
  return res.value * n / std::pow(t, n);
}

double ball_mean(const RadialField& f, double t, const Params& params, const QuadConfig& cfg,
                 Execution exec) {
  return ball_mean_fn([f](double r) { return f.value(r); }, t, params, cfg, exec);
}

GridImport import_grid(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DomainError("import_grid: cannot open " + path);
  std::vector<double> rs, vs;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double r, v;
    if (!(ls >> r >> v))
      throw DomainError("import_grid: malformed line " + std::to_string(lineno) + " in " + path);
    if (!rs.empty() && !(r > rs.back()))
      throw DomainError("import_grid: radii not strictly increasing at line " +
                        std::to_string(lineno));
    rs.push_back(r);
    vs.push_back(v);
  }
  GridImport out;
  out.points = static_cast<int>(rs.size());
  if (out.points < 3) throw DomainError("import_grid: need at least 3 samples");
  out.r_min = rs.front();
  out.r_max = rs.back();
  out.field = spline_field(std::move(rs), std::move(vs));
  return out;
}

}  // namespace pstab
