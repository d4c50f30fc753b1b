#include "squeeze/hamiltonians.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "squeeze/errors.hpp"

namespace squeeze {

void DriveEnvelope::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("drive frequency must be positive");
  if (!(omega0 >= 0.0) || !std::isfinite(omega0)) throw DomainError("drive amplitude must be non-negative");
  if (!std::isfinite(phase)) throw DomainError("drive phase must be finite");
}

double DriveEnvelope::period() const { return 2.0 * std::numbers::pi / omega; }

double drive_value(const DriveEnvelope& env, double t) { return env.omega0 * std::cos(env.omega * t + env.phase); }

double drive_integral(const DriveEnvelope& env, double t0, double t1) {
  // sin(b) - sin(a) = 2 cos((a+b)/2) sin((b-a)/2), free of cancellation for short steps.
  const double a = env.omega * t0 + env.phase;
  const double b = env.omega * t1 + env.phase;
  const double half = 0.5 * env.omega * (t1 - t0);
  return env.omega0 / env.omega * 2.0 * std::cos(0.5 * (a + b)) * std::sin(half);
}

double bessel_j0(double x) { return std::cyl_bessel_j(0.0, std::abs(x)); }

double alpha0(double omega0, double omega) {
  if (!(omega > 0.0)) throw DomainError("alpha0: omega must be positive");
  return 0.5 * (1.0 + bessel_j0(2.0 * omega0 / omega));
}

TrigMoments time_averaged_trig_moments(double omega0, double omega, double phase, int quadrature_points) {
  if (quadrature_points < 64)
    throw DomainError("time_averaged_trig_moments needs at least 64 points, got " + std::to_string(quadrature_points));
  if (!(omega > 0.0)) throw DomainError("time_averaged_trig_moments: omega must be positive");
  const double ratio = omega0 / omega;
  TrigMoments m;
  // Trapezoid rule over one period of s = omega t + phase; spectrally accurate for periodic integrands.
  for (int i = 0; i < quadrature_points; ++i) {
    const double s = phase + 2.0 * std::numbers::pi * i / quadrature_points;
    const double theta1 = ratio * std::sin(s);
    const double c = std::cos(theta1), sn = std::sin(theta1);
    m.cos2 += c * c;
    m.sin2 += sn * sn;
    m.sincos += sn * c;
  }
  m.cos2 /= quadrature_points;
  m.sin2 /= quadrature_points;
  m.sincos /= quadrature_points;
  return m;
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

void HamiltonianSpec::validate() const {
  if (!(chi > 0.0) || !std::isfinite(chi)) throw DomainError("coupling chi must be positive");
  std::visit(Overloaded{[](const form::Mixture& m) {
                          if (!(m.alpha0 > -0.5 && m.alpha0 <= 1.0))
                            throw DomainError("alpha0 must lie in (-0.5, 1], got " + std::to_string(m.alpha0));
                        },
                        [](const form::Driven& d) { d.drive.validate(); }, [](const auto&) {}},
             form);
}

QuadraticForm quadratic_form(const HamiltonianSpec& spec) {
  spec.validate();
  const double chi = spec.chi;
  return std::visit(Overloaded{[&](const form::Oat&) { return QuadraticForm{.zz = chi}; },
                               [&](const form::Tact&) { return QuadraticForm{.zz = chi, .yy = -chi}; },
                               [&](const form::QuadraticAbout& q) {
                                 QuadraticForm f;
                                 (q.axis == Axis::X ? f.xx : q.axis == Axis::Y ? f.yy : f.zz) = chi;
                                 return f;
                               },
                               [&](const form::Mixture& m) {
                                 return QuadraticForm{.zz = chi * m.alpha0, .xx = chi * (1.0 - m.alpha0)};
                               },
                               [](const form::Driven&) -> QuadraticForm {
                                 throw DomainError("driven Hamiltonian has no static quadratic form");
                               }},
                    spec.form);
}

BandedHermitian build_matrix(SpinLength j, const HamiltonianSpec& spec, double t) {
  if (const auto* d = std::get_if<form::Driven>(&spec.form)) {
    spec.validate();
    auto h = BandedHermitian::from_quadratic(j, QuadraticForm{.zz = spec.chi});
    h.add_linear(j, {0.0, drive_value(d->drive, t), 0.0});
    return h;
  }
  return BandedHermitian::from_quadratic(j, quadratic_form(spec));
}

EffectiveModel build_effective(SpinLength j, double chi, double omega0, double omega, double phase) {
  DriveEnvelope{omega0, omega, phase}.validate();
  const double a0 = alpha0(omega0, omega);
  HamiltonianSpec spec{chi, form::Mixture{a0}};
  const auto f = quadratic_form(spec);
  return EffectiveModel{a0, f, BandedHermitian::from_quadratic(j, f),
                        RotationSpec::about_y(omega0 / omega * std::sin(phase))};
}

}  // namespace squeeze
