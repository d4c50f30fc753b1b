#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "squeeze/errors.hpp"
#include "squeeze/hamiltonians.hpp"

using namespace squeeze;
using std::numbers::pi;

TEST_CASE("drive envelope") {
  const DriveEnvelope env{2.0, 3.0, -pi / 2};
  CHECK(std::abs(drive_value(env, 0.0)) <= 1e-15);
  CHECK(drive_value(env, pi / 6) == doctest::Approx(2.0).scale(0));
  CHECK(env.period() == doctest::Approx(2 * pi / 3).scale(0));
  CHECK_THROWS_AS((DriveEnvelope{1.0, 0.0, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((DriveEnvelope{-1.0, 1.0, 0.0}.validate()), DomainError);
}

TEST_CASE("drive integral equals the antiderivative difference and adds up") {
  const DriveEnvelope env{5.0, 7.0, 0.3};
  auto anti = [&](double t) { return env.omega0 / env.omega * std::sin(env.omega * t + env.phase); };
  for (auto [a, b] : {std::pair{0.0, 0.1}, {0.2, 1.7}, {3.0, 3.0 + 1e-9}}) {
    // the antiderivative difference itself cancels, hence an absolute bound
    CHECK(std::abs(drive_integral(env, a, b) - (anti(b) - anti(a))) < 1e-14);
    const double mid = 0.5 * (a + b);
    CHECK(drive_integral(env, a, b) ==
          doctest::Approx(drive_integral(env, a, mid) + drive_integral(env, mid, b)).epsilon(1e-12).scale(0));
  }
  // tiny interval: integral ~ Omega(t) dt without cancellation loss
  const double t = 0.4, t1 = t + 1e-12, h = t1 - t;
  CHECK(drive_integral(env, t, t1) == doctest::Approx(drive_value(env, t + h / 2) * h).epsilon(1e-9).scale(0));
}

TEST_CASE("Bessel J0 against the power series") {
  for (double x : {0.0, 0.1, 1.0, 1.8114, 2.5, 5.0, 10.0, -3.0}) CHECK(bessel_j0(x) == doctest::Approx(oracle::bessel_j0_series(x)).epsilon(1e-12).scale(0));
  const double z = oracle::bisect_j0(2.0, 3.0);
  CHECK(z == doctest::Approx(2.404825557695773).epsilon(1e-13).scale(0));
  CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-10);
}

TEST_CASE("alpha0") {
  CHECK(alpha0(0.0, 1.0) == 1.0);
  const double z = oracle::bisect_j0(2.0, 3.0);
  CHECK(alpha0(0.5 * z, 1.0) == doctest::Approx(0.5).epsilon(1e-10).scale(0));
  CHECK(alpha0(0.9057, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-3).scale(0));
  CHECK_THROWS_AS(alpha0(1.0, 0.0), DomainError);
}

TEST_CASE("period averages of the rotating-frame factors") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ratio(0.0, 3.0), ph(-pi, pi);
  for (int i = 0; i < 10; ++i) {
    const double r = ratio(rng), phase = ph(rng);
    const auto m = time_averaged_trig_moments(r, 1.0, phase, 256);
    const double j0 = oracle::bessel_j0_series(2 * r);
    CHECK(m.cos2 == doctest::Approx((1 + j0) / 2).epsilon(1e-8).scale(0));
    CHECK(m.sin2 == doctest::Approx((1 - j0) / 2).epsilon(1e-8).scale(0));
    CHECK(std::abs(m.sincos) < 1e-8);
  }
  CHECK_THROWS_AS(time_averaged_trig_moments(0.5, 1.0, 0.0, 63), DomainError);
}

TEST_CASE("Hamiltonian specs") {
  CHECK_THROWS_AS((HamiltonianSpec{0.0, form::Oat{}}.validate()), DomainError);
  CHECK_THROWS_AS((HamiltonianSpec{1.0, form::Mixture{-0.6}}.validate()), DomainError);
  CHECK_THROWS_AS((HamiltonianSpec{1.0, form::Mixture{1.2}}.validate()), DomainError);
  CHECK_NOTHROW((HamiltonianSpec{1.0, form::Mixture{1.0}}.validate()));
  const auto tact = quadratic_form({2.0, form::Tact{}});
  CHECK(tact.zz == 2.0);
  CHECK(tact.yy == -2.0);
  CHECK(tact.xx == 0.0);
  CHECK_THROWS_AS(quadratic_form({1.0, form::Driven{{1.0, 1.0, 0.0}}}), DomainError);
}

TEST_CASE("driven generator at time t") {
  const auto j = SpinLength::from_particles(6);
  const DriveEnvelope env{3.0, 2.0, 0.4};
  const auto h = build_matrix(j, {1.5, form::Driven{env}}, 0.7);
  const auto d = oracle::dense_spin(3.0);
  const oracle::Mat ref = 1.5 * d.jz * d.jz + drive_value(env, 0.7) * d.jy;
  for (std::size_t r = 0; r < j.dim(); ++r)
    for (std::size_t c = 0; c < j.dim(); ++c) CHECK(std::abs(h.entry(r, c) - ref(r, c)) < 1e-12);
}

TEST_CASE("effective model of the driven Hamiltonian") {
  const auto j = SpinLength::from_particles(10);
  const double w = 100.0, r = 0.9057;
  const auto eff = build_effective(j, 1.0, r * w, w, -pi / 2);
  CHECK(eff.alpha0 == doctest::Approx((1 + oracle::bessel_j0_series(2 * r)) / 2).epsilon(1e-12).scale(0));
  CHECK(eff.form.zz == doctest::Approx(eff.alpha0).scale(0));
  CHECK(eff.form.xx == doctest::Approx(1 - eff.alpha0).scale(0));
  CHECK(eff.frame.angle() * eff.frame.axis()[1] == doctest::Approx(-r).scale(0));
  const auto d = oracle::dense_spin(5.0);
  const oracle::Mat ref = eff.alpha0 * d.jz * d.jz + (1 - eff.alpha0) * d.jx * d.jx;
  for (std::size_t a = 0; a < j.dim(); ++a)
    for (std::size_t b = 0; b < j.dim(); ++b) CHECK(std::abs(eff.matrix.entry(a, b) - ref(a, b)) < 1e-12);
}
