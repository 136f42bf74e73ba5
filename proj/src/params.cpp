#include "pstab/params.hpp"

#include <cmath>
#include <string>

#include "pstab/errors.hpp"

namespace pstab {

Params make_params(int n, double p) {
  if (n < 2)
    throw DomainError("make_params: dimension must satisfy n >= 2, got n = " + std::to_string(n));
  if (!(p > 1.0) || !(p < static_cast<double>(n)))
    throw DomainError("make_params: exponent must satisfy 1 < p < n, got p = " + std::to_string(p));
  Params pr;
  pr.n = n;
  pr.p = p;
  pr.p_star = n * p / (n - p);
  pr.p_conj = p / (p - 1.0);
  pr.p_star_conj = pr.p_star / (pr.p_star - 1.0);
  return pr;
}

double surface_measure(int n) {
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

}  // namespace pstab
