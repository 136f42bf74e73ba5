#include "pstab/kappa.hpp"

#include <cmath>
#include <string>

#include "pstab/errors.hpp"

namespace pstab {

namespace {
// Induced coefficients are evaluated away from the critical radius r = 0.
constexpr double kInnerRadius = 1e-8;
}  // namespace

KappaField KappaField::constant(double value) {
  KappaField k;
  k.kind_ = Kind::constant;
  k.value_ = value;
  return k;
}

KappaField KappaField::closed_form(std::function<double(double)> fn) {
  KappaField k;
  k.kind_ = Kind::closed;
  k.fn_ = std::move(fn);
  return k;
}

KappaField KappaField::induced(RadialField u, Params params) {
  KappaField k;
  k.kind_ = Kind::induced;
  k.u_ = std::move(u);
  k.params_ = params;
  return k;
}

double KappaField::operator()(double r) const {
  switch (kind_) {
    case Kind::constant:
      return factor_ * value_;
    case Kind::closed:
      return factor_ * fn_(rate_ * r);
    case Kind::induced: {
      const double s = std::max(rate_ * r, kInnerRadius);
      const double lap = p_laplacian(u_, params_, s);
      const double uval = u_.value(s);
      return factor_ * (-lap / std::pow(uval, params_.p_star - 1.0));
    }
  }
  return factor_ * value_;
}

KappaField KappaField::dilated(double rate) const {
  if (!(rate > 0.0)) throw DomainError("KappaField::dilated: rate must be positive");
  KappaField k = *this;
  k.rate_ *= rate;
  return k;
}

KappaField KappaField::scaled(double factor) const {
  KappaField k = *this;
  k.factor_ *= factor;
  return k;
}

KappaField induced_kappa(const RadialField& u, const Params& params) {
  if (u.positivity() != Positivity::positive)
    throw DomainError("induced_kappa: source field must be positive");
  KappaField k = KappaField::induced(u, params);
  // sign sample on a log grid; the induced form must stay positive
  for (int i = 0; i <= 48; ++i) {
    const double r = std::pow(10.0, -3.0 + 6.0 * i / 48.0);
    const double val = k(r);
    if (!(val > 0.0))
      throw DomainError("induced_kappa: nonpositive value " + std::to_string(val) +
                        " sampled at r = " + std::to_string(r));
  }
  return k;
}

}  // namespace pstab
