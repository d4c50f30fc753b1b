#pragma once

// Generators of the twisting dynamics: one-axis twisting, two-axis
// counter-twisting, and the modulated-drive Hamiltonian with its
// high-frequency effective form.

#include <variant>

#include "squeeze/banded.hpp"
#include "squeeze/spin.hpp"

namespace squeeze {

enum class Axis { X, Y, Z };

/// Omega(t) = omega0 cos(omega t + phase).
struct DriveEnvelope {
  double omega0 = 0.0;  // amplitude, rad per unit time
  double omega = 1.0;   // angular frequency
  double phase = 0.0;   // radians

  /// Throws DomainError unless omega > 0 and omega0 >= 0.
  void validate() const;
  double period() const;
};

double drive_value(const DriveEnvelope& env, double t);
/// Exact integral of Omega over [t0, t1].
double drive_integral(const DriveEnvelope& env, double t0, double t1);

double bessel_j0(double x);

/// (1 + J0(2 omega0/omega)) / 2.
double alpha0(double omega0, double omega);

struct TrigMoments {
  double cos2 = 0.0;    // <cos^2 theta1>
  double sin2 = 0.0;    // <sin^2 theta1>
  double sincos = 0.0;  // <sin theta1 cos theta1>
};

/// Period averages of the rotating-frame trigonometric factors with
/// theta1(t) = (omega0/omega) sin(omega t + phase), by the periodic trapezoid
/// rule. Throws DomainError if quadrature_points < 64.
TrigMoments time_averaged_trig_moments(double omega0, double omega, double phase, int quadrature_points);

namespace form {
struct Oat {};
struct Tact {};
struct QuadraticAbout {
  Axis axis = Axis::Z;
};
struct Mixture {
  double alpha0 = 1.0;
};
struct Driven {
  DriveEnvelope drive;
};
}  // namespace form

using HamiltonianForm = std::variant<form::Oat, form::Tact, form::QuadraticAbout, form::Mixture, form::Driven>;

struct HamiltonianSpec {
  double chi = 1.0;
  HamiltonianForm form;

  /// Throws DomainError on chi <= 0, alpha0 outside (-0.5, 1], or a bad drive.
  void validate() const;
};

/// Static forms only; throws DomainError for Driven.
QuadraticForm quadratic_form(const HamiltonianSpec& spec);

/// Matrix of the generator; for Driven, H(t) = chi Jz^2 + Omega(t) Jy at time t.
BandedHermitian build_matrix(SpinLength j, const HamiltonianSpec& spec, double t = 0.0);

struct EffectiveModel {
  double alpha0 = 1.0;
  QuadraticForm form;      // chi [alpha0 Jz^2 + (1 - alpha0) Jx^2]
  BandedHermitian matrix;  // same, as a matrix
  RotationSpec frame;      // R_y by (omega0/omega) sin(phase)
};

/// High-frequency effective generator of chi Jz^2 + Omega(t) Jy and the frame
/// rotation that carries the phase dependence.
EffectiveModel build_effective(SpinLength j, double chi, double omega0, double omega, double phase);

}  // namespace squeeze
