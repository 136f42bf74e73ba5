#include <doctest.h>

#include <cmath>

#include "pstab/bubble.hpp"
#include "pstab/deficit.hpp"
#include "pstab/errors.hpp"
#include "pstab/lab.hpp"
#include "pstab/norms.hpp"

using namespace pstab;

namespace {
const Params kP42 = make_params(4, 2.0);
}

TEST_CASE("kappa0 of constant coefficients") {
  QuadConfig quad;
  const RadialField u = bubble_field(kP42, 1.0);
  CHECK(kappa0(u, KappaField::constant(1.0), kP42, quad) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kappa0(u, KappaField::constant(2.0), kP42, quad) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("kappa0 quotients agree on manufactured solutions") {
  QuadConfig quad;
  const PerturbedFamily fam = make_perturbed(kP42, 1.0, 1e-3, 1.0);
  const Kappa0Result k0 = kappa0_quotients(fam.u, fam.kappa, kP42, quad);
  CHECK(k0.rel_mismatch < 1e-6);
}

TEST_CASE("deficit vanishes exactly at the solved configuration") {
  QuadConfig quad;
  const RadialField u = bubble_field(kP42, 1.0);
  CHECK(deficit_cfm(u, KappaField::constant(1.0), kP42, quad) <= 1e-10);

  // any perturbation makes it strictly positive
  const PerturbedFamily fam = make_perturbed(kP42, 1.0, 1e-3, 1.0);
  CHECK(deficit_cfm(fam.u, fam.kappa, kP42, quad) > 1e-5);
}

TEST_CASE("deficit and kappa0 are invariant under the symmetry action") {
  QuadConfig quad;
  const PerturbedFamily fam = make_perturbed(kP42, 1.0, 1e-2, 1.0);
  const double d0 = deficit_cfm(fam.u, fam.kappa, kP42, quad);
  const double k0 = kappa0(fam.u, fam.kappa, kP42, quad);
  for (double lambda : {0.5, 2.0}) {
    const RadialField tu = transform(fam.u, 0.0, lambda, kP42);
    const KappaField tk = fam.kappa.dilated(lambda);
    CHECK(deficit_cfm(tu, tk, kP42, quad) == doctest::Approx(d0).epsilon(1e-6));
    CHECK(kappa0(tu, tk, kP42, quad) == doctest::Approx(k0).epsilon(1e-6));
  }
}

TEST_CASE("sobolev deficit vanishes on the extremal manifold") {
  QuadConfig quad;
  const SobolevLevel level = sobolev_level(kP42, quad);
  CHECK(std::abs(sobolev_deficit(bubble_field(kP42, 1.0), kP42, quad,
                                 Execution::parallel, &level)) < 1e-8);
  for (const TalentiElement e : {TalentiElement{1.0, 1.0}, TalentiElement{3.0, 0.4}}) {
    const RadialField t = talenti_field(kP42, e);
    CHECK(std::abs(sobolev_deficit(t, kP42, quad, Execution::parallel, &level)) < 1e-8);
  }

  const PerturbedFamily fam = make_perturbed(kP42, 1.0, 1e-2, 1.0);
  CHECK(sobolev_deficit(fam.u, kP42, quad, Execution::parallel, &level) > 0.0);

  // invariance under the symmetry action
  const double d0 = sobolev_deficit(fam.u, kP42, quad, Execution::parallel, &level);
  const RadialField tu = transform(fam.u, 0.0, 2.0, kP42);
  CHECK(sobolev_deficit(tu, kP42, quad, Execution::parallel, &level) ==
        doctest::Approx(d0).epsilon(1e-6));
}

TEST_CASE("normalize rescales kappa0 to one") {
  QuadConfig quad;
  const RadialField u = bubble_field(kP42, 1.0);

  const Normalized nd = normalize(u, KappaField::constant(2.0), kP42, quad);
  CHECK(nd.k0 == doctest::Approx(2.0).epsilon(1e-10));
  // w = 2^{1/(p*-p)} u = sqrt(2) u for (4, 2)
  CHECK(nd.w.value(0.7) == doctest::Approx(std::sqrt(2.0) * u.value(0.7)).epsilon(1e-12));
  CHECK(kappa0(nd.w, nd.kappa_hat, kP42, quad) == doctest::Approx(1.0).epsilon(1e-8));

  const Normalized same = normalize(u, KappaField::constant(1.0), kP42, quad);
  CHECK(same.w.value(1.3) == doctest::Approx(u.value(1.3)).epsilon(1e-12));

  const PerturbedFamily fam = make_perturbed(kP42, 1.0, 5e-3, 1.0);
  const Normalized nm = normalize(fam.u, fam.kappa, kP42, quad);
  CHECK(kappa0(nm.w, nm.kappa_hat, kP42, quad) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("energy window flag matches the scaled bounds") {
  QuadConfig quad;
  const SobolevLevel level = sobolev_level(kP42, quad);
  const RadialField u = bubble_field(kP42, 1.0);
  const DeficitReport rep =
      deficit_report(u, KappaField::constant(1.0), kP42, quad, Execution::parallel, &level);
  CHECK(rep.energy_window_ok);
  CHECK(rep.energy == doctest::Approx(level.s_pow_n).epsilon(1e-8));

  // kappa == 2 shifts the window by kappa0^{p/(p-p*)} = 1/2 for (4, 2);
  // the unit-bubble energy S^4 falls outside [S^4/4, 3 S^4/4]
  const DeficitReport shifted =
      deficit_report(u, KappaField::constant(2.0), kP42, quad, Execution::parallel, &level);
  CHECK(shifted.window_lo == doctest::Approx(0.5 * level.s_pow_n / 2.0).epsilon(1e-10));
  CHECK_FALSE(shifted.energy_window_ok);
}
