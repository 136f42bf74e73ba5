#pragma once

#include <array>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "pstab/params.hpp"

namespace pstab {

enum class Positivity { positive, nonnegative, unknown };

inline constexpr double kUnboundedSupport = std::numeric_limits<double>::infinity();

// One node of a radial expression tree. Every node reports analytic radial
// derivatives up to order 3 wherever they exist; derivative queries at a
// degenerate radius throw DegeneratePointError.
class FieldNode {
 public:
  virtual ~FieldNode() = default;

  // Fills out[0..order] with f, f', f'', f''' at radius r >= 0.
  virtual void derivs(double r, int order, std::array<double, 4>& out) const = 0;

  virtual Positivity positivity() const = 0;

  // Radius beyond which the field is identically zero (infinity if none).
  virtual double support_radius() const { return kUnboundedSupport; }

  // True when any ancestor data came from a sampled grid fit.
  virtual bool reduced_precision() const { return false; }
};

// Closed-form radial scalar field, immutable after construction. Values are
// cheap handles onto a shared expression tree; copying is O(1).
class RadialField {
 public:
  RadialField() = default;
  explicit RadialField(std::shared_ptr<const FieldNode> node) : node_(std::move(node)) {}

  bool valid() const { return static_cast<bool>(node_); }

  double value(double r) const { return derivs(r, 0)[0]; }
  double derivative(double r, int k = 1) const { return derivs(r, k)[static_cast<size_t>(k)]; }

  // Analytic derivatives d[0..order]; order <= 3.
  std::array<double, 4> derivs(double r, int order) const;

  double support_radius() const { return node_->support_radius(); }
  Positivity positivity() const { return node_->positivity(); }
  bool reduced_precision() const { return node_->reduced_precision(); }

  const std::shared_ptr<const FieldNode>& node() const { return node_; }

 private:
  std::shared_ptr<const FieldNode> node_;
};

// --- primitives ---

RadialField constant_field(double c);

// c0 + c1 r^q with real q >= 0.
RadialField power_term_field(double c0, double c1, double q);

// Paraboloid c0 + c1 r^{p/(p-1)} in the exponent family of params.
RadialField paraboloid_field(double c0, double c1, const Params& params);

// Even polynomial bump (1 - (r/R)^2)^4 on [0, R], zero outside; C^3 at R.
RadialField bump_field(double radius);

// Natural cubic spline through (r_i, v_i); zero beyond the last knot,
// evaluation below the first knot is an error. Marked reduced precision.
RadialField spline_field(std::vector<double> radii, std::vector<double> values);

// --- combinators ---

RadialField sum(const RadialField& a, const RadialField& b);
RadialField difference(const RadialField& a, const RadialField& b);
RadialField scale(double c, const RadialField& f);

// f^alpha; requires a positive base.
RadialField pow_field(const RadialField& base, double alpha);
RadialField reciprocal(const RadialField& f);

// r -> prefactor * f(rate * r).
RadialField dilate(const RadialField& f, double rate, double prefactor);

// Expanded radial p-Laplace operator
//   (p-1)|f'|^{p-2} f'' + (n-1)|f'|^{p-2} f' / r,
// with the limit branch at r = 0 (n * f''(0) for p = 2, zero for p > 2).
double p_laplacian(const RadialField& f, const Params& params, double r);

}  // namespace pstab
