#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "pstab/field.hpp"
#include "pstab/params.hpp"

namespace pstab {

enum class TailPolicy { analytic_power_tail, hard_truncate };

// Serial is the reference path; parallel must reproduce it bit for bit
// (panels are evaluated independently and reduced in a fixed order).
enum class Execution { serial, parallel };

struct QuadConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  double r_cut = 1e4;
  TailPolicy tail_policy = TailPolicy::analytic_power_tail;
  int max_subdivisions = 20000;

  // Compact identifier stamped into every emitted table.
  std::string id() const;
};

struct IntegralResult {
  double value = 0.0;
  double err_est = 0.0;  // sum of panel error estimates, as reported by the rule
  int subdivisions_used = 0;
};

// Integrand f(r) of a rotationally invariant integral; the r^{n-1} weight and
// the sphere measure are supplied by integrate_radial.
struct RadialIntegrand {
  std::function<double(double)> f;
  // Zero beyond this radius (infinite if unbounded).
  double support_radius = std::numeric_limits<double>::infinity();
  // Known decay rate f ~ r^{-e}; used by the analytic power tail.
  std::optional<double> tail_exponent;
};

// sigma_{n-1} * \int_0^infty f(r) r^{n-1} dr, truncated at r_cut with the
// configured tail treatment. Throws QuadratureError on nonconvergence.
IntegralResult integrate_radial(const RadialIntegrand& integrand, int dim_n,
                                const QuadConfig& cfg,
                                Execution exec = Execution::parallel);

// Plain \int_a^b g(r) dr with the same adaptive panel scheme.
IntegralResult integrate_interval(const std::function<double(double)>& g, double a,
                                  double b, const QuadConfig& cfg,
                                  Execution exec = Execution::parallel);

}  // namespace pstab
