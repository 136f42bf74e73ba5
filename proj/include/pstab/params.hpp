#pragma once

namespace pstab {

// Dimension/exponent bundle. All derived exponents are populated once at
// construction; 1 < p < n is enforced there.
struct Params {
  int n = 0;
  double p = 0.0;
  double p_star = 0.0;       // np/(n-p)
  double p_conj = 0.0;       // p/(p-1), also the radial power of the paraboloids
  double p_star_conj = 0.0;  // p*/(p*-1)

  // Decay rates of a solution and of its gradient at infinity.
  double decay_u() const { return (n - p) / (p - 1.0); }
  double decay_grad() const { return (n - 1.0) / (p - 1.0); }
};

// Throws DomainError unless n >= 2 and 1 < p < n.
Params make_params(int n, double p);

// sigma_{n-1} = 2 pi^{n/2} / Gamma(n/2), the measure of the unit sphere.
double surface_measure(int n);

}  // namespace pstab
