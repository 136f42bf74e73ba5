#pragma once

#include "pstab/bubble.hpp"
#include "pstab/field.hpp"
#include "pstab/kappa.hpp"
#include "pstab/params.hpp"
#include "pstab/quadrature.hpp"

namespace pstab {

// The normalization constant computed both ways:
//   value           = \int kappa u^{p*} / \int u^{p*}
//   energy_quotient = \int |grad u|^p / \int u^{p*}
// The two agree when u actually solves the perturbed equation for kappa.
struct Kappa0Result {
  double value = 0.0;
  double energy_quotient = 0.0;
  double rel_mismatch = 0.0;
};

Kappa0Result kappa0_quotients(const RadialField& u, const KappaField& kappa,
                              const Params& params, const QuadConfig& cfg,
                              Execution exec = Execution::parallel);

double kappa0(const RadialField& u, const KappaField& kappa, const Params& params,
              const QuadConfig& cfg, Execution exec = Execution::parallel);

// || (kappa - kappa0) u^{p*-1} ||_{(p*)'}
double deficit_cfm(const RadialField& u, const KappaField& kappa, const Params& params,
                   const QuadConfig& cfg, Execution exec = Execution::parallel);

// ||grad u||_p / ||u||_{p*} - S. Pass a precomputed level to reuse S.
double sobolev_deficit(const RadialField& u, const Params& params, const QuadConfig& cfg,
                       Execution exec = Execution::parallel,
                       const SobolevLevel* level = nullptr);

// Scaling reduction to kappa0 = 1: w = kappa0^{1/(p*-p)} u, kappa_hat = kappa/kappa0.
struct Normalized {
  RadialField w;
  KappaField kappa_hat;
  double k0 = 0.0;
};
Normalized normalize(const RadialField& u, const KappaField& kappa, const Params& params,
                     const QuadConfig& cfg, Execution exec = Execution::parallel);

struct DeficitReport {
  double kappa0 = 0.0;
  double kappa0_energy_quotient = 0.0;
  double deficit_cfm = 0.0;
  double sobolev_deficit = 0.0;
  double energy = 0.0;  // \int |grad u|^p
  bool energy_window_ok = false;
  double window_lo = 0.0;  // kappa0-scaled window actually checked
  double window_hi = 0.0;
  std::string quad_id;
};

DeficitReport deficit_report(const RadialField& u, const KappaField& kappa,
                             const Params& params, const QuadConfig& cfg,
                             Execution exec = Execution::parallel,
                             const SobolevLevel* level = nullptr);

}  // namespace pstab
