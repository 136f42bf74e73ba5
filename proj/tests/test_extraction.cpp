#include <doctest.h>

#include <cmath>

#include "pstab/bubble.hpp"
#include "pstab/errors.hpp"
#include "pstab/extraction.hpp"
#include "pstab/lab.hpp"
#include "pstab/norms.hpp"

using namespace pstab;

namespace {
const Params kP42 = make_params(4, 2.0);
}

TEST_CASE("schedule arithmetic for p >= 2") {
  const ExtractConfig cfg;
  const Schedule s = make_schedule(1e-2, kP42, 0.5, cfg, 2.0);
  CHECK(s.q == doctest::Approx(2.0));
  CHECK(s.frak_p == doctest::Approx(32.0));
  CHECK(s.m_exp == doctest::Approx(1.0 / 64.0));
  CHECK(s.t == doctest::Approx(std::pow(1e-2, 1.0 / 24.0)).epsilon(1e-12));
  CHECK(s.t == doctest::Approx(0.8254).epsilon(1e-3));
  CHECK(s.tau == s.t);

  // monotonicity: smaller deficit, smaller t, larger r
  const Schedule s2 = make_schedule(1e-4, kP42, 0.5, cfg, 2.0);
  CHECK(s2.t < s.t);
  CHECK(s2.r_big >= s.r_big);

  CHECK_THROWS_AS(make_schedule(1.0, kP42, 0.5, cfg, 2.0), DomainError);
}

TEST_CASE("schedule picks the Hoelder branch for p < 2") {
  const Params pr = make_params(4, 1.5);
  const ExtractConfig cfg;
  const Schedule s = make_schedule(1e-2, pr, 0.5, cfg, 2.0);
  const double q = std::min(pr.p, pr.p / (pr.p - 1.0));
  CHECK(s.q == doctest::Approx(q));
  const double frak = 2.0 * pr.n * q + pr.p / (pr.p - 1.0) * (2.0 * pr.n + 0.5);
  CHECK(s.frak_p == doctest::Approx(frak));
  const double m2 = 0.5 * q * 0.25 / (16.0 * 3.0 * 1.5 * 0.5);
  CHECK(s.m_exp == doctest::Approx(std::min(q / (4.0 * frak), m2)));
}

TEST_CASE("locate_peak: monotone profiles, perturbed profiles, ring maxima") {
  CHECK(locate_peak(bubble_field(kP42, 1.0)) == 0.0);

  const PerturbedFamily fam = make_perturbed(kP42, 1.0, 1e-2, 1.0);
  CHECK(locate_peak(fam.u) == 0.0);

  // two opposing amplitudes put the maximum exactly at r = 1
  const RadialField ring = sum(talenti_field(kP42, TalentiElement{-1.0, 5.0}),
                               talenti_field(kP42, TalentiElement{1.0, 0.2}));
  const double peak = locate_peak(ring);
  CHECK(peak == doctest::Approx(1.0).epsilon(1e-8));

  CHECK_THROWS_AS(locate_peak(constant_field(1.0)), DomainError);
}

TEST_CASE("paraboloids share their gradient and pin the scale") {
  const VField vf = v_of_u(bubble_field(kP42, 1.0), kP42);
  const double p_bar = 2.0 * std::sqrt(2.0);
  const Paraboloids pq = paraboloids(vf, p_bar, kP42);
  CHECK(pq.lambda == doctest::Approx(1.0).epsilon(1e-12));

  for (int i = 0; i < 16; ++i) {
    const double r = 0.05 + 0.5 * i;
    CHECK(pq.q_field.derivative(r) ==
          doctest::Approx(pq.curly_q.derivative(r)).epsilon(1e-14));
  }

  // the paraboloid gap is constant in r
  const double gap0 = pq.q_field.value(0.0) - pq.curly_q.value(0.0);
  for (double r : {0.5, 1.0, 7.0})
    CHECK(pq.q_field.value(r) - pq.curly_q.value(r) == doctest::Approx(gap0).epsilon(1e-12));

  CHECK_THROWS_AS(paraboloids(vf, -1.0, kP42), DomainError);
}

TEST_CASE("extraction round trip on exact bubbles") {
  QuadConfig quad;
  for (const auto& [n, p] : {std::pair{4, 2.0}, {5, 2.0}, {4, 3.0}}) {
    const Params pr = make_params(n, p);
    for (double lambda : {0.5, 1.0, 2.0}) {
      const RadialField u = bubble_field(pr, lambda);
      const ExtractionReport rep =
          extract(u, KappaField::constant(1.0), pr, quad);
      CHECK(rep.lambda == doctest::Approx(lambda).epsilon(1e-6));
      CHECK(rep.err_total < 1e-6);
      CHECK(rep.x0_radius == 0.0);
      CHECK(rep.energy_window_ok);
      CHECK(rep.x0_in_localization_ball);
    }
  }
}

TEST_CASE("extracted profile solves the critical equation") {
  QuadConfig quad;
  const PerturbedFamily fam = make_perturbed(kP42, 1.0, 1e-3, 1.0);
  const ExtractionReport rep = extract(fam.u, fam.kappa, kP42, quad);
  const RadialField ext = bubble_field(kP42, rep.lambda);
  for (int i = 0; i < 64; ++i) {
    const double r = std::pow(10.0, -3.0 + 6.0 * i / 63.0);
    const double lap = p_laplacian(ext, kP42, r);
    const double rhs = std::pow(ext.value(r), kP42.p_star - 1.0);
    CHECK(std::abs(lap + rhs) / rhs < 1e-8);
  }
}

TEST_CASE("extraction on the perturbed family stays near the source scale") {
  QuadConfig quad;
  const PerturbedFamily fam = make_perturbed(kP42, 1.0, 1e-3, 1.0);
  const ExtractionReport rep = extract(fam.u, fam.kappa, kP42, quad);
  CHECK(std::abs(rep.lambda - 1.0) < 0.05);
  const double bound = 10.0 * 1e-3 * norm_grad_lp(bump_field(1.0), kP42, quad);
  CHECK(rep.err_total <= bound);
  CHECK(rep.err_total ==
        doctest::Approx(std::pow(std::pow(rep.err_interior, kP42.p) +
                                     std::pow(rep.err_exterior, kP42.p),
                                 1.0 / kP42.p))
            .epsilon(1e-12));
}

TEST_CASE("exterior error decreases in the split radius") {
  QuadConfig quad;
  const PerturbedFamily fam = make_perturbed(kP42, 1.0, 1e-2, 1.0);
  double prev = 1e300;
  for (double r_big : {5.0, 20.0, 80.0}) {
    ExtractConfig cfg;
    cfg.r_big_override = r_big;
    const ExtractionReport rep = extract(fam.u, fam.kappa, kP42, quad, cfg);
    CHECK(rep.err_exterior < prev);
    prev = rep.err_exterior;
  }
}

TEST_CASE("garbage input still yields a report") {
  QuadConfig quad;
  // positive and decaying, but nowhere near a solution for this coefficient
  const RadialField junk =
      sum(talenti_field(kP42, TalentiElement{0.7, 3.0}), scale(0.4, bump_field(2.0)));
  const ExtractionReport rep = extract(junk, KappaField::constant(1.0), kP42, quad);
  CHECK(std::isfinite(rep.err_total));
  CHECK(rep.lambda > 0.0);
  CHECK(rep.err_total > 0.1);

  // the induced coefficient of such a field fails its sign check
  CHECK_THROWS_AS(induced_kappa(junk, kP42), DomainError);
}
