#pragma once

// Executable versions of the squeezing protocols: repeated-pulse effective
// TACT, modulated-drive effective TACT, both with optional freezing, plus
// pulse-area noise ensembles and the plain OAT/TACT reference runs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "squeeze/diagnostics.hpp"
#include "squeeze/hamiltonians.hpp"
#include "squeeze/schedule.hpp"
#include "squeeze/spin.hpp"

namespace squeeze {

/// chi t_opt of two-axis counter-twisting, ln(4N) / (2N).
double tact_optimal_time(int particles);
/// chi t_opt of one-axis twisting, 6^(1/6) N^(-2/3).
double oat_optimal_time(int particles);

struct NoiseModel {
  enum class DrawScope { PerPulse, PerRealization };

  double eta = 0.001;
  std::uint64_t seed = 42;
  DrawScope draw_scope = DrawScope::PerPulse;

  /// Throws DomainError if eta < 0 or is not finite.
  void validate() const;
};

/// Area factors 1 + r eta, r uniform in [-0.5, 0.5], for `pulses` pulses of
/// the given realization. Streams are split deterministically from the seed.
std::vector<double> pulse_factors(const NoiseModel& noise, std::size_t pulses, std::uint64_t realization);

struct FreezePolicy {
  enum class Trigger { AnalyticTime, NumericMinimum };

  Trigger trigger = Trigger::NumericMinimum;
  /// Half-width of the numeric search, as a fraction of the analytic t_opt.
  double window = 0.3;
  /// Rotations applied at the trigger; empty selects the protocol default.
  /// Each angle's sign is re-chosen on a probe run.
  std::vector<RotationSpec> rotations;
  /// Free chi Jz^2 evolution after the freeze, in units of t_opt.
  double hold = 10.0;
};

/// A schedule ready to run together with its initial state.
struct Protocol {
  ProtocolSchedule schedule;
  DickeState initial;
  double chi = 1.0;
  /// Analytic optimum in schedule time (not chi t).
  double t_opt = 0.0;
  std::optional<double> freeze_time{};
  /// Decisions taken while building (trigger, rotation signs).
  std::vector<RunEvent> events{};
  std::vector<std::string> warnings{};
};

struct PulseTiming {
  double delta_t = 0.0;  // schedule time
  double period = 0.0;   // t_c = 3 delta_t
  double t_opt = 0.0;
  /// 2 chi delta_t N, required to be << 1.
  double trotter_parameter = 0.0;
};

PulseTiming pulse_timing(int particles, double chi, int periods);

/// Nc periods of [2 delta_t under chi Jx^2, delta_t under chi Jz^2] from
/// |j,j>, with Jx^2 realized as R_y(pi/2) e^{-i chi 2dt Jz^2} R_y(-pi/2).
/// Samples at n t_c + delta_t and n t_c + 2.5 delta_t. With a freeze the
/// periods run up to the trigger (an n t_c + delta_t point), a pi/4 rotation
/// about -x follows and chi Jz^2 evolution continues for hold * t_opt.
/// Throws DomainError for periods < 1 or particles < 2.
Protocol build_repeated_pulse(int particles, double chi, int periods, const std::optional<FreezePolicy>& freeze = {});

struct DriveSettings {
  double omega_over_chi = 2.0 * 3.14159265358979323846 * 2e4;
  double omega0_over_omega = 0.9057;
  double phase = -0.5 * 3.14159265358979323846;
  int steps_per_period = 64;
  /// Uniform samples over the run, endpoints included.
  std::size_t samples = 601;
  /// Run length without a freeze, in units of the effective t_opt.
  double duration = 2.0;
};

/// Driven evolution chi Jz^2 + Omega(t) Jy from exp(-i (Omega0/omega) sin(phase) Jy)|j,j>_x.
/// A freeze stops the drive at a zero of Omega(t), applies R_y(Omega0/omega)
/// and R_{-x}(pi/4) with signs chosen on a probe run, then holds under chi Jz^2.
/// Throws DomainError for omega0_over_omega < 0 or omega_over_chi <= 0.
Protocol build_modulated_drive(int particles, double chi, const DriveSettings& settings,
                               const std::optional<FreezePolicy>& freeze = {});

/// Times in [lo, hi] where Omega(t) = omega0 cos(omega t + phase) vanishes.
std::vector<double> drive_zero_times(const DriveEnvelope& drive, double lo, double hi);

/// Runs the schedule; with noise, pulse areas are scaled per `realization`.
RunRecord run_protocol(const ProtocolSchedule& schedule, const DickeState& initial, double chi,
                       const std::optional<NoiseModel>& noise = {}, std::uint64_t realization = 0);

struct MonteCarloResult {
  std::vector<RunRecord> realizations;
  /// Pointwise mean of every report field over realizations.
  RunRecord mean;
};

/// Throws DomainError for realizations < 1.
MonteCarloResult run_monte_carlo(const ProtocolSchedule& schedule, const DickeState& initial, double chi,
                                 const NoiseModel& noise, std::size_t realizations);

enum class ReferenceModel { Oat, Tact };

/// CSS along x under chi Jz^2 (OAT) or chi (Jz^2 - Jy^2) (TACT), sampled
/// uniformly over [0, 3 t_opt] of that model.
RunRecord reference_run(int particles, double chi, ReferenceModel model, std::size_t samples = 601);

/// Timescales of the pulse protocol at a physical coupling chi = 2 pi chi_hz.
struct UnitReport {
  double chi_rad_per_s = 0.0;
  double t_opt_s = 0.0;
  double delta_t_s = 0.0;
  double period_s = 0.0;
  double total_s = 0.0;
};

UnitReport unit_report(int particles, int periods, double chi_hz);

}  // namespace squeeze
