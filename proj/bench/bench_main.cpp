// Wall-clock comparison of the serial reference kernels against the OpenMP
// paths. The two must agree bit for bit; this target reports the speedup.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "pstab/bubble.hpp"
#include "pstab/lab.hpp"
#include "pstab/matrix_check.hpp"
#include "pstab/norms.hpp"
#include "pstab/params.hpp"
#include "pstab/quadrature.hpp"

using namespace pstab;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename F>
double timed(const char* name, F&& fn, double* out_value) {
  const double t0 = now_ms();
  const double v = fn();
  const double dt = now_ms() - t0;
  std::printf("  %-28s %10.2f ms   value %.12g\n", name, dt, v);
  if (out_value) *out_value = v;
  return dt;
}

}  // namespace

int main() {
  const Params pr = make_params(4, 2.0);
  QuadConfig quad;
  quad.rel_tol = 1e-12;

  std::printf("quadrature: gradient energy of the unit profile, rel_tol %.0e\n",
              quad.rel_tol);
  const RadialField u = bubble_field(pr, 1.0);
  auto energy = [&](Execution exec) {
    RadialIntegrand in;
    in.f = [&](double r) { return std::pow(std::abs(u.derivative(r)), pr.p); };
    in.tail_exponent = pr.p * pr.decay_grad();
    return integrate_radial(in, pr.n, quad, exec).value;
  };
  double v_serial = 0.0, v_parallel = 0.0;
  const double t_qs = timed("integrate (serial)", [&] { return energy(Execution::serial); },
                            &v_serial);
  const double t_qp = timed("integrate (parallel)",
                            [&] { return energy(Execution::parallel); }, &v_parallel);
  std::printf("  bit-identical: %s, speedup x%.2f\n\n",
              v_serial == v_parallel ? "yes" : "NO", t_qs / t_qp);

  std::printf("matrix inequalities: 2e5 trials per dimension 2..6\n");
  MatrixCheckConfig mc;
  mc.trials = 200000;
  auto matrix = [&](Execution exec) {
    const MatrixCheckReport rep = matrix_inequality_check(mc, exec);
    double worst = -1e300;
    for (const auto& d : rep.dims) worst = std::max(worst, d.max_slack_antisym);
    return worst;
  };
  const double t_ms = timed("matrix check (serial)",
                            [&] { return matrix(Execution::serial); }, &v_serial);
  const double t_mp = timed("matrix check (parallel)",
                            [&] { return matrix(Execution::parallel); }, &v_parallel);
  std::printf("  bit-identical: %s, speedup x%.2f\n\n",
              v_serial == v_parallel ? "yes" : "NO", t_ms / t_mp);

  std::printf("sweep: three epsilon values, full record pipeline\n");
  SweepConfig sc;
  sc.params = pr;
  sc.quad.rel_tol = 1e-9;
  sc.epsilon_grid = {1e-2, 3e-3, 1e-3};
  auto sweep_val = [&](Execution exec) {
    const SweepResult res = run_sweep(sc, exec);
    return res.records.back().deficit_cfm;
  };
  const double t_ss = timed("sweep (serial)", [&] { return sweep_val(Execution::serial); },
                            &v_serial);
  const double t_sp = timed("sweep (parallel)",
                            [&] { return sweep_val(Execution::parallel); }, &v_parallel);
  std::printf("  bit-identical: %s, speedup x%.2f\n",
              v_serial == v_parallel ? "yes" : "NO", t_ss / t_sp);
  return 0;
}
