#include "doctest.h"

#include <cmath>
#include <numbers>

#include "squeeze/errors.hpp"
#include "squeeze/full_hilbert.hpp"
#include "squeeze/propagator.hpp"

using namespace squeeze;
using std::numbers::pi;

TEST_CASE("N = 2 OAT matches the three-level evolution") {
  const auto j = SpinLength::from_particles(2);
  for (auto init : {make_dicke_state(j, 1.0), make_css(j, 1.0, 0.4)}) {
    for (double t : {0.1, 1.3, 5.0}) {
      const auto r = oracle::full_hilbert_oracle(2, {1.0, form::Oat{}}, init, t);
      CHECK(fidelity(r.state, evolve_quadratic_diagonal(init, 1.0, t)) >= 1 - 1e-10);
      CHECK(std::abs(r.norm_deficit) <= 1e-10);
    }
  }
  // Jz^2 on the triplet is diag(1, 0, 1): |1,0> picks up no phase
  const auto zero = make_dicke_state(j, 0.0);
  const auto r = oracle::full_hilbert_oracle(2, {1.0, form::Oat{}}, zero, 0.9);
  CHECK(std::abs(r.state[1] - Complex(1.0, 0.0)) < 1e-12);
  const auto up = oracle::full_hilbert_oracle(2, {1.0, form::Oat{}}, make_dicke_state(j, 1.0), 0.9);
  CHECK(std::abs(up.state[0] - std::polar(1.0, -0.9)) < 1e-12);
}

TEST_CASE("N = 1 OAT is a global phase") {
  const auto j = SpinLength::from_particles(1);
  const auto s = make_css(j, 0.7, 0.2);
  const auto r = oracle::full_hilbert_oracle(1, {1.0, form::Oat{}}, s, 2.0);
  CHECK(fidelity(r.state, s) == doctest::Approx(1.0).epsilon(1e-12).scale(0));
  const auto a = squeezing_report(s), b = squeezing_report(r.state);
  CHECK(b.var_min == doctest::Approx(a.var_min).epsilon(1e-12).scale(0));
  CHECK(b.var_max == doctest::Approx(a.var_max).epsilon(1e-12).scale(0));
}

TEST_CASE("N = 4 TACT from the x coherent state") {
  const auto j = SpinLength::from_particles(4);
  const auto s = make_css(j, pi / 2, 0.0);
  const auto r = oracle::full_hilbert_oracle(4, {1.0, form::Tact{}}, s, 0.1);
  const auto d = QuadraticPropagator(j, quadratic_form({1.0, form::Tact{}})).evolve(s, 0.1);
  CHECK(fidelity(r.state, d) >= 1 - 1e-9);
}

TEST_CASE("N = 4 OAT squeezing parameter") {
  const auto j = SpinLength::from_particles(4);
  const auto s = make_css(j, pi / 2, 0.0);
  const auto r = oracle::full_hilbert_oracle(4, {1.0, form::Oat{}}, s, 0.1);
  CHECK(std::abs(squeezing_report(r.state).xi2 - squeezing_report(evolve_quadratic_diagonal(s, 1.0, 0.1)).xi2) < 1e-8);
}

TEST_CASE("N = 4 driven evolution") {
  const auto j = SpinLength::from_particles(4);
  const double w = 2 * pi * 2000;
  const DriveEnvelope env{0.9057 * w, w, -pi / 2};
  const auto s = rotate(make_css(j, pi / 2, 0.0), RotationSpec::about_y(-0.9057));
  const auto r = oracle::full_hilbert_oracle(4, {1.0, form::Driven{env}}, s, 0.2);
  CHECK(std::abs(r.norm_deficit) <= 1e-10);
  CHECK(fidelity(r.state, evolve_driven(s, 1.0, env, 0.0, 0.2)) >= 1 - 1e-6);
}

TEST_CASE("schedules translate to oracle steps") {
  const auto j = SpinLength::from_particles(3);
  ProtocolSchedule sch;
  sch.add(Pulse{RotationSpec::about_y(-pi / 2), 1.01, ""});
  sch.add(QuadraticSegment{Axis::Z, 1.0, 0.2});
  sch.add(FreezeMarker{0.2});
  sch.add(QuadraticSegment{Axis::X, 0.5, 0.1});
  sch.add(DrivenSegment{{30.0, 60.0, 0.1}, 1.0, 0.3, 0.4});
  const auto steps = oracle::steps_from_schedule(sch);
  CHECK(steps.size() == 4);
  const auto s = make_css(j, 0.3, 0.1);
  const auto r = oracle::full_hilbert_evolve(s, steps);
  CHECK(fidelity(r.state, evolve_schedule(s, sch).first) >= 1 - 1e-8);
}

TEST_CASE("oracle size limit") {
  const auto j = SpinLength::from_particles(11);
  CHECK_THROWS_AS(oracle::full_hilbert_oracle(11, {1.0, form::Oat{}}, make_dicke_state(j, 5.5), 0.1), ResourceError);
  CHECK_THROWS_AS(oracle::full_hilbert_oracle(4, {1.0, form::Oat{}}, make_dicke_state(j, 5.5), 0.1), DomainError);
}
