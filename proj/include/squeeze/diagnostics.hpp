#pragma once

// Observables: Kitagawa-Ueda squeezing parameter and direction, mean spin,
// Husimi Q function, Jz distribution, optimum detection and scaling fits.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "squeeze/spin.hpp"

namespace squeeze {

/// First moments and symmetrized second moments Re<{J_a, J_b}>/2 (a,b = x,y,z).
struct SpinMoments {
  Vec3 mean{};
  std::array<Vec3, 3> second{};
};

/// O(dim) evaluation from the ladder structure.
SpinMoments spin_moments(SpinLength j, std::span<const Complex> amps);
SpinMoments spin_moments(const DickeState& state);

struct SqueezingReport {
  double xi2 = 1.0;
  double theta_min = 0.0;  // [0, pi), measured from n1 towards n2
  Vec3 mean_spin{};
  double var_min = 0.0;
  double var_max = 0.0;
  bool isotropic = false;  // A = B = 0; theta_min reported as 0
};

/// Perpendicular frame (n1, n2) for a mean-spin direction n:
/// n1 = normalize(z x n), or x when |n x z| < 1e-6; n2 = n x n1.
std::array<Vec3, 2> perpendicular_frame(const Vec3& n);

/// Throws DegenerateDirectionError when |<J>| <= 1e-9 j.
SqueezingReport squeezing_report(SpinLength j, const SpinMoments& moments);
SqueezingReport squeezing_report(const DickeState& state);

Vec3 mean_spin(const DickeState& state);

struct JzDistribution {
  std::vector<double> probabilities;  // index k <-> m = j - k
  double mean = 0.0;
  double variance = 0.0;
};

JzDistribution m_distribution(const DickeState& state);

struct HusimiGrid {
  std::size_t theta_count = 0;
  std::size_t phi_count = 0;
  std::vector<double> thetas;  // midpoints (i + 1/2) pi / theta_count
  std::vector<double> phis;    // 2 pi k / phi_count
  std::vector<double> q;       // row-major, theta outer

  double at(std::size_t i, std::size_t k) const { return q[i * phi_count + k]; }
  /// (2j+1)/(4 pi) times the sin(theta)-weighted quadrature of Q; ideally 1.
  double normalization(SpinLength j) const;
};

/// Q(theta, phi) = |<CSS(theta, phi)|psi>|^2 at one point.
double husimi_at(const DickeState& state, double theta, double phi);
/// Throws DomainError for grids smaller than 16 x 32.
HusimiGrid husimi_q(const DickeState& state, std::size_t theta_count, std::size_t phi_count);

namespace serial {
HusimiGrid husimi_q(const DickeState& state, std::size_t theta_count, std::size_t phi_count);
}

struct RunSample {
  double chi_t = 0.0;
  SqueezingReport report;
};

struct RunEvent {
  std::string kind;
  double chi_t = 0.0;
  std::string detail;
};

/// Diagnostics time series plus provenance.
struct RunRecord {
  int particles = 0;
  double chi = 1.0;
  std::string schedule_digest;
  std::optional<std::uint64_t> seed;
  std::vector<RunSample> samples;
  std::vector<RunEvent> events;

  /// Throws DomainError unless chi_t exceeds the previous sample time.
  void add_sample(double chi_t, const SqueezingReport& report);
  void add_event(std::string kind, double chi_t, std::string detail = {});
};

struct Optimum {
  double chi_t = 0.0;
  double xi2 = 0.0;
  bool at_boundary = false;
};

/// Minimum of xi2 over samples with chi_t in [lo, hi], refined by the parabola
/// through the smallest sample and its neighbours. A minimum on the window edge
/// is returned unrefined with at_boundary set. Throws DomainError with fewer
/// than 3 samples in the window.
Optimum find_optimum(const RunRecord& record, double lo, double hi);
Optimum find_optimum(std::span<const double> times, std::span<const double> values);

struct ScalingFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;  // RMS of log residuals
};

struct ScalingPoint {
  double n = 0.0;
  double xi2 = 0.0;
};

/// Least squares of log xi2 = log prefactor + exponent log N. Needs >= 3 distinct N.
ScalingFit scaling_fit(std::span<const ScalingPoint> points);

}  // namespace squeeze
