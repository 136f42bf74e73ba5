#pragma once

#include <functional>

#include "pstab/field.hpp"
#include "pstab/params.hpp"

namespace pstab {

// Coefficient field of the perturbed critical equation. Either closed form
// (constant or explicit function of r) or induced from a source field u as
//   kappa(r) = -Delta_p u(r) / u(r)^{p*-1},
// in which case u weakly solves the perturbed equation with this kappa by
// construction. The induced form is recomputed at every evaluation.
class KappaField {
 public:
  KappaField() = default;  // constant 1

  static KappaField constant(double value);
  static KappaField closed_form(std::function<double(double)> fn);
  static KappaField induced(RadialField u, Params params);

  double operator()(double r) const;

  bool is_constant() const { return kind_ == Kind::constant; }
  double constant_value() const { return value_; }

  // kappa(rate * x), the coefficient seen by a dilated solution.
  KappaField dilated(double rate) const;
  // factor * kappa, the coefficient seen by a rescaled solution amplitude.
  KappaField scaled(double factor) const;

 private:
  enum class Kind { constant, closed, induced };
  Kind kind_ = Kind::constant;
  double value_ = 1.0;
  std::function<double(double)> fn_;
  RadialField u_;
  Params params_{};
  double rate_ = 1.0;
  double factor_ = 1.0;
};

// Builds the induced coefficient and checks kappa > 0 on a radial sample;
// throws DomainError on a sign failure. Requires u > 0.
KappaField induced_kappa(const RadialField& u, const Params& params);

}  // namespace pstab
