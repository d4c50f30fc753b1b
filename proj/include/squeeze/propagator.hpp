#pragma once

// Time evolution: exact evolution under static quadratic generators,
// second-order split-step integration of the modulated-drive Hamiltonian, and
// execution of protocol schedules.

#include <functional>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "squeeze/banded.hpp"
#include "squeeze/diagnostics.hpp"
#include "squeeze/hamiltonians.hpp"
#include "squeeze/schedule.hpp"
#include "squeeze/spin.hpp"

namespace squeeze {

/// c_m -> exp(-i chi t m^2) c_m. Throws DomainError for negative duration.
DickeState evolve_quadratic_diagonal(const DickeState& state, double chi, double duration);

/// exp(-i chi t J_axis^2) through the cached axis eigenbasis.
DickeState evolve_quadratic_axis(const DickeState& state, Axis axis, double chi, double duration);

void evolve_quadratic_axis_in_place(SpinLength j, std::span<Complex> amps, Axis axis, double chi, double duration);

/// Exact propagator of a static QuadraticForm. The generator conserves the
/// parity of j - m, so it is diagonalized as two symmetric tridiagonal blocks.
class QuadraticPropagator {
 public:
  QuadraticPropagator(SpinLength j, const QuadraticForm& form);

  SpinLength spin() const noexcept { return j_; }
  const QuadraticForm& form() const noexcept { return form_; }

  DickeState evolve(const DickeState& state, double duration) const;
  void evolve_in_place(std::span<Complex> amps, double duration) const;

  /// Repeated evaluation from one initial state (eigenbasis coefficients cached).
  class Trajectory {
   public:
    std::vector<Complex> amplitudes_at(double t) const;
    DickeState at(double t) const;

   private:
    friend class QuadraticPropagator;
    const QuadraticPropagator* owner_ = nullptr;
    std::vector<std::vector<Complex>> coeffs_;
  };
  // The trajectory points back at this propagator, so it must outlive it.
  Trajectory trajectory(const DickeState& initial) const&;
  Trajectory trajectory(const DickeState& initial) const&& = delete;

 private:
  struct Block {
    std::vector<std::size_t> index;  // Dicke indices k of this parity
    std::vector<double> energy;
    std::vector<double> v;   // row-major eigenvectors (columns)
    std::vector<double> vt;  // transpose
  };
  SpinLength j_;
  QuadraticForm form_;
  std::vector<Block> blocks_;
  bool diagonal_ = false;
  std::vector<double> diag_energy_;
};

/// Integrates H(t) = chi Jz^2 + Omega(t) Jy with Strang splitting
///   exp(-i chi h/2 Jz^2) exp(-i theta Jy) exp(-i chi h/2 Jz^2),
/// theta the exact integral of Omega over the substep. Substeps lie on the
/// absolute grid t = k T / steps_per_period. The state is held in the Jy
/// eigenframe, where the drive is diagonal and chi Jz^2 is a small-norm
/// banded exponential.
class DrivenIntegrator {
 public:
  /// Throws DomainError if steps_per_period < 16 or the substep underflows.
  DrivenIntegrator(const DickeState& initial, double chi, const DriveEnvelope& drive, double t0,
                   int steps_per_period = 64);

  double time() const noexcept { return t_; }
  /// Throws DomainError if t < time().
  void advance_to(double t);

  DickeState state() const;
  /// Lab-frame moments evaluated in O(dim) without leaving the eigenframe.
  SpinMoments moments() const;

  std::size_t steps_taken() const noexcept { return steps_; }
  std::size_t renormalizations() const noexcept { return renormalizations_; }
  double max_norm_drift() const noexcept { return max_drift_; }

 private:
  void twist(double tau);
  void step(double a, double b, bool flush);

  SpinLength j_;
  double chi_;
  DriveEnvelope drive_;
  double h_;
  double t_;
  std::vector<Complex> y_;
  BandedHermitian twist_op_;
  double twist_hi_;
  double pending_twist_ = 0.0;
  std::size_t steps_ = 0;
  std::size_t renormalizations_ = 0;
  double max_drift_ = 0.0;
};

DickeState evolve_driven(const DickeState& state, double chi, const DriveEnvelope& drive, double t0, double t1,
                         int steps_per_period = 64);

struct DoublingCheck {
  int steps_per_period = 64;
  double infidelity = 0.0;  // 1 - |<psi(n)|psi(2n)>|
};

/// Runs evolve_driven at steps_per_period and twice that, reporting the
/// terminal infidelity between the two.
DoublingCheck driven_doubling_check(const DickeState& state, double chi, const DriveEnvelope& drive, double t0,
                                    double t1, int steps_per_period = 64);

struct EvolveOptions {
  /// Scale turning schedule time into the chi_t column of the record.
  double chi = 1.0;
  std::optional<std::uint64_t> seed;
  /// Called with the state right after the instantaneous events that follow a FreezeMarker.
  std::function<void(double, const DickeState&)> on_freeze;
};

/// Applies the schedule in order, sampling diagnostics at its sample times. A
/// sample coinciding with instantaneous events is taken after them.
std::pair<DickeState, RunRecord> evolve_schedule(const DickeState& initial, const ProtocolSchedule& schedule,
                                                 const EvolveOptions& options = {});

}  // namespace squeeze
