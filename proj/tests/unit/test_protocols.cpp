#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "squeeze/errors.hpp"
#include "squeeze/propagator.hpp"
#include "squeeze/protocols.hpp"

using namespace squeeze;
using std::numbers::pi;

namespace {

bool same_samples(const RunRecord& a, const RunRecord& b) {
  if (a.samples.size() != b.samples.size()) return false;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const auto &x = a.samples[i], &y = b.samples[i];
    if (x.chi_t != y.chi_t || x.report.xi2 != y.report.xi2 || x.report.theta_min != y.report.theta_min ||
        x.report.mean_spin != y.report.mean_spin)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("optimal times") {
  CHECK(tact_optimal_time(1250) == doctest::Approx(3.407e-3).epsilon(1e-3).scale(0));
  CHECK(oat_optimal_time(1250) == doctest::Approx(1.16e-2).epsilon(5e-3).scale(0));
}

TEST_CASE("pulse timing") {
  const auto t = pulse_timing(1250, 1.0, 50);
  // N_c t_c = 3 t_opt(TACT)
  CHECK(t.period * 50 == doctest::Approx(3 * std::log(5000.0) / 2500.0).epsilon(1e-14).scale(0));
  CHECK(t.delta_t == doctest::Approx(6.8135e-5).epsilon(1e-4).scale(0));
  CHECK(t.period == doctest::Approx(2.0441e-4).epsilon(1e-4).scale(0));
  CHECK(t.trotter_parameter == doctest::Approx(0.17034).epsilon(1e-4).scale(0));
  CHECK_THROWS_AS(pulse_timing(1250, 1.0, 0), DomainError);
}

TEST_CASE("single period structure") {
  const auto p = build_repeated_pulse(20, 1.0, 1);
  int pulses = 0, quads = 0;
  for (const auto& s : p.schedule.segments()) {
    pulses += std::holds_alternative<Pulse>(s);
    quads += std::holds_alternative<QuadraticSegment>(s);
  }
  CHECK(pulses == 2);
  CHECK(quads == 2);
  CHECK(p.schedule.segments().size() == 4);
  const auto t = pulse_timing(20, 1.0, 1);
  REQUIRE(p.schedule.sample_times().size() == 2);
  CHECK(p.schedule.sample_times()[0] == doctest::Approx(t.delta_t).scale(0));
  CHECK(p.schedule.sample_times()[1] == doctest::Approx(2.5 * t.delta_t).scale(0));
  CHECK_THROWS_AS(build_repeated_pulse(20, 1.0, 0), DomainError);
}

TEST_CASE("Trotter gate warning") {
  CHECK(build_repeated_pulse(1250, 1.0, 50).warnings.empty());
  // 2 chi dt N = 2 ln(4N) / Nc >= 1
  CHECK(build_repeated_pulse(100, 1.0, 2).warnings.size() == 1);
}

TEST_CASE("pulse schedule approaches the effective Hamiltonian at first order") {
  const int n = 100;
  const auto j = SpinLength::from_particles(n);
  const double t_opt = pulse_timing(n, 1.0, 1).t_opt;
  const QuadraticPropagator eff(j, {.zz = 1.0 / 3.0, .xx = 2.0 / 3.0});
  const double target = squeezing_report(eff.evolve(make_dicke_state(j, j.value()), t_opt)).xi2;
  double prev = 0.0;
  for (int nc : {25, 50, 100, 200}) {
    const auto p = build_repeated_pulse(n, 1.0, nc);
    CHECK(p.schedule.end_time() == doctest::Approx(t_opt).epsilon(1e-12).scale(0));
    const double dev = std::abs(squeezing_report(evolve_schedule(p.initial, p.schedule).first).xi2 - target);
    CAPTURE(nc);
    CAPTURE(dev);
    // The leftover half twist at the end rotates about the mean spin, so the
    // xi2 deviation drops faster than the state error (ratio near 4).
    if (prev > 0.0) {
      CHECK(prev / dev > 1.0);
      CHECK(prev / dev < 8.0);
    }
    prev = dev;
  }
}

TEST_CASE("drive zeros") {
  const DriveEnvelope env{0.9057 * 2 * pi * 2e4, 2 * pi * 2e4, -pi / 2};
  const auto z = drive_zero_times(env, 0.0, 3 * env.period());
  REQUIRE(z.size() == 7);
  for (std::size_t k = 0; k < z.size(); ++k) {
    CHECK(std::abs(z[k] - k * pi / env.omega) <= 1e-14 * env.period());
    CHECK(std::abs(drive_value(env, z[k])) <= 1e-12 * env.omega0);
  }
  const DriveEnvelope shifted{1.0, 3.0, 0.4};
  for (double t : drive_zero_times(shifted, 0.2, 9.0)) CHECK(std::abs(drive_value(shifted, t)) <= 1e-12);
}

TEST_CASE("drive protocol initial state and warnings") {
  DriveSettings s;
  s.samples = 5;
  s.duration = 0.01;
  const int n = 40;
  const auto p = build_modulated_drive(n, 1.0, s);
  const auto m = mean_spin(p.initial);
  const double j = n / 2.0;
  // exp(i (Omega0/omega) Jy) tips the x spin towards +z
  CHECK(m[0] == doctest::Approx(j * std::cos(0.9057)).epsilon(1e-12).scale(0));
  CHECK(std::abs(m[1]) < 1e-10);
  CHECK(m[2] == doctest::Approx(j * std::sin(0.9057)).epsilon(1e-12).scale(0));
  CHECK(p.warnings.empty());
  s.omega_over_chi = 100.0;
  CHECK(build_modulated_drive(n, 1.0, s).warnings.size() == 1);
  s.omega0_over_omega = -0.1;
  CHECK_THROWS_AS(build_modulated_drive(n, 1.0, s), DomainError);
}

TEST_CASE("drive freeze fires at a drive zero") {
  DriveSettings s;
  s.samples = 41;
  const int n = 60;
  FreezePolicy f;
  f.hold = 1.0;
  const auto p = build_modulated_drive(n, 1.0, s, f);
  REQUIRE(p.freeze_time);
  const DriveEnvelope env{s.omega0_over_omega * s.omega_over_chi, s.omega_over_chi, s.phase};
  CHECK(std::abs(drive_value(env, *p.freeze_time)) <= 1e-12 * env.omega0);
  CHECK(std::abs(*p.freeze_time - p.t_opt) <= f.window * p.t_opt + env.period());
  REQUIRE(p.events.size() == 2);
  CHECK(p.events[0].kind == "freeze-trigger");
  CHECK(p.events[1].kind == "freeze-signs");
}

TEST_CASE("pulse noise factors") {
  NoiseModel noise;
  const auto a = pulse_factors(noise, 200, 3);
  CHECK(a == pulse_factors(noise, 200, 3));
  CHECK(a != pulse_factors(noise, 200, 4));
  for (double f : a) {
    CHECK(f >= 1.0 - 0.5 * noise.eta);
    CHECK(f <= 1.0 + 0.5 * noise.eta);
  }
  noise.draw_scope = NoiseModel::DrawScope::PerRealization;
  const auto b = pulse_factors(noise, 10, 3);
  for (double f : b) CHECK(f == b[0]);
  noise.eta = -1.0;
  CHECK_THROWS_AS(noise.validate(), DomainError);
}

TEST_CASE("noise runs") {
  const auto p = build_repeated_pulse(50, 1.0, 10);
  const auto clean = run_protocol(p.schedule, p.initial, 1.0);
  NoiseModel zero;
  zero.eta = 0.0;
  CHECK(same_samples(run_protocol(p.schedule, p.initial, 1.0, zero, 7), clean));

  NoiseModel noise;
  noise.eta = 0.01;
  const auto one = run_monte_carlo(p.schedule, p.initial, 1.0, noise, 1);
  CHECK(same_samples(one.mean, one.realizations[0]));
  CHECK(same_samples(one.realizations[0], run_protocol(p.schedule, p.initial, 1.0, noise, 0)));
  CHECK_FALSE(same_samples(one.realizations[0], clean));

  const auto a = run_monte_carlo(p.schedule, p.initial, 1.0, noise, 6);
  const auto b = run_monte_carlo(p.schedule, p.initial, 1.0, noise, 6);
  for (std::size_t r = 0; r < 6; ++r) CHECK(same_samples(a.realizations[r], b.realizations[r]));
  CHECK(same_samples(a.mean, b.mean));
  CHECK_THROWS_AS(run_monte_carlo(p.schedule, p.initial, 1.0, noise, 0), DomainError);
}

TEST_CASE("OAT reference at N = 2 against dense evolution") {
  const auto rec = reference_run(2, 1.0, ReferenceModel::Oat, 301);
  const auto d = oracle::dense_spin(1.0);
  const oracle::Vec css = oracle::to_vec(make_css(SpinLength::from_particles(2), pi / 2, 0.0));
  CHECK(rec.samples.back().chi_t == doctest::Approx(3.0 * oat_optimal_time(2)).scale(0));
  double best_rec = INFINITY, best_dense = INFINITY;
  for (const auto& s : rec.samples) {
    const double x = oracle::xi2_dense(1.0, oracle::expm(d.jz * d.jz, s.chi_t) * css);
    CHECK(std::abs(x - s.report.xi2) < 1e-10);
    best_rec = std::min(best_rec, s.report.xi2);
    best_dense = std::min(best_dense, x);
  }
  CHECK(std::abs(best_rec - best_dense) < 1e-10);
}

TEST_CASE("unit report") {
  const auto u = unit_report(1250, 50, 0.063);
  CHECK(u.chi_rad_per_s == doctest::Approx(2 * pi * 0.063).scale(0));
  CHECK(u.period_s == doctest::Approx(500e-6).epsilon(0.1).scale(0));
  CHECK(u.total_s == doctest::Approx(25e-3).epsilon(0.1).scale(0));
  CHECK(u.delta_t_s == doctest::Approx(170e-6).epsilon(0.1).scale(0));
  CHECK_THROWS_AS(unit_report(1250, 50, 0.0), DomainError);
}

TEST_CASE("squeezed axis at the dt sampling points is pi/4 from z") {
  const auto p = build_repeated_pulse(400, 1.0, 40);
  const auto rec = run_protocol(p.schedule, p.initial, 1.0);
  const RunSample* best = nullptr;
  for (std::size_t i = 0; i < rec.samples.size(); i += 2)
    if (!best || rec.samples[i].report.xi2 < best->report.xi2) best = &rec.samples[i];
  const auto& r = best->report;
  CHECK(std::abs(r.mean_spin[0]) / std::hypot(r.mean_spin[0], r.mean_spin[1], r.mean_spin[2]) > 0.999);
  CAPTURE(r.theta_min);
  CHECK(std::abs(std::abs(pi / 2 - r.theta_min) - pi / 4) <= 0.02);
}
