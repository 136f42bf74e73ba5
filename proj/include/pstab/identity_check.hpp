#pragma once

#include <optional>

#include "pstab/field.hpp"

namespace pstab {

// Pointwise check of the divergence identity satisfied by the auxiliary
// pressure of a positive C^3 radial field w with potential V(xi) = |xi|^p / p:
//   div(w^{2-n} A grad P) = w^{1-n} { -n <A grad P, grad w> - P tr W
//       + n(p-1)[tr W^2 + <grad tr W, a(grad w)>] - P w_j V_{ijk} w_ki }.
// The left-hand side uses one central finite difference of the analytically
// evaluated radial flux; everything else is analytic in derivatives <= 3.
struct IdentityResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|)
};

// additive_constant defaults to (p/(n-p))^{p-1}; the identity holds for any
// value, so p = n callers must supply one (1.0 is used if they do not).
// Radii with |w'| < min_gradient are rejected: third derivatives of |xi|^p
// degenerate at small gradients when p < 3.
IdentityResidual identity_residual(const RadialField& w, double potential_p, int dim_n,
                                   double r, double fd_step = 1e-4,
                                   double min_gradient = 0.1,
                                   std::optional<double> additive_constant = std::nullopt);

}  // namespace pstab
