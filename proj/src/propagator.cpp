#include "squeeze/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "squeeze/errors.hpp"
#include "squeeze/kernels.hpp"
#include "squeeze/spin_basis.hpp"
#include "squeeze/tridiagonal.hpp"

namespace squeeze {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

void require_duration(double duration) {
  if (!(duration >= 0.0) || !std::isfinite(duration))
    throw DomainError("evolution duration must be finite and non-negative");
}

std::vector<Complex> copy_amps(const DickeState& s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

}  // namespace

DickeState evolve_quadratic_diagonal(const DickeState& state, double chi, double duration) {
  require_duration(duration);
  auto amps = copy_amps(state);
  kernels::apply_phases(amps, state.spin().value(), 0.0, chi * duration);
  return DickeState(state.spin(), std::move(amps));
}

void evolve_quadratic_axis_in_place(SpinLength j, std::span<Complex> amps, Axis axis, double chi, double duration) {
  require_duration(duration);
  if (duration == 0.0 || chi == 0.0) return;
  if (axis == Axis::Z) {
    kernels::apply_phases(amps, j.value(), 0.0, chi * duration);
    return;
  }
  // J_y = Rz(pi/2) J_x Rz(-pi/2).
  if (axis == Axis::Y) rotate_z_in_place(j, amps, -kHalfPi);
  const auto basis = detail::JxEigenbasis::get(j);
  std::vector<Complex> tmp(amps.size());
  basis->to_eigenbasis(amps, tmp);
  kernels::apply_phases(tmp, j.value(), 0.0, chi * duration);
  basis->from_eigenbasis(tmp, amps);
  if (axis == Axis::Y) rotate_z_in_place(j, amps, kHalfPi);
}

DickeState evolve_quadratic_axis(const DickeState& state, Axis axis, double chi, double duration) {
  auto amps = copy_amps(state);
  evolve_quadratic_axis_in_place(state.spin(), amps, axis, chi, duration);
  return DickeState(state.spin(), std::move(amps));
}

// ---------------------------------------------------------------------------
// QuadraticPropagator

QuadraticPropagator::QuadraticPropagator(SpinLength j, const QuadraticForm& form) : j_(j), form_(form) {
  const auto h = BandedHermitian::from_quadratic(j, form);
  const std::size_t n = j.dim();
  if (form.xx == form.yy) {
    diagonal_ = true;
    diag_energy_.assign(h.d0().begin(), h.d0().end());
    return;
  }
  for (std::size_t parity = 0; parity < 2 && parity < n; ++parity) {
    Block b;
    for (std::size_t k = parity; k < n; k += 2) b.index.push_back(k);
    const std::size_t m = b.index.size();
    std::vector<double> d(m), e(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) d[i] = h.d0()[b.index[i]];
    for (std::size_t i = 0; i + 1 < m; ++i) e[i] = h.d2()[b.index[i]].real();
    auto eig = detail::tridiagonal_eigen(d, e);
    const auto& z = eig.vectors;
    b.energy = std::move(eig.values);
    b.v.resize(m * m);
    b.vt.resize(m * m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) {
        b.v[r * m + c] = z[c * m + r];
        b.vt[c * m + r] = z[c * m + r];
      }
    blocks_.push_back(std::move(b));
  }
}

void QuadraticPropagator::evolve_in_place(std::span<Complex> amps, double duration) const {
  require_duration(duration);
  if (amps.size() != j_.dim()) throw DomainError("QuadraticPropagator: dimension mismatch");
  if (diagonal_) {
    for (std::size_t k = 0; k < amps.size(); ++k) amps[k] *= std::polar(1.0, -diag_energy_[k] * duration);
    return;
  }
  for (const auto& b : blocks_) {
    const std::size_t m = b.index.size();
    std::vector<Complex> x(m), c(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = amps[b.index[i]];
    kernels::real_matvec(b.vt, m, x, c);
    for (std::size_t i = 0; i < m; ++i) c[i] *= std::polar(1.0, -b.energy[i] * duration);
    kernels::real_matvec(b.v, m, c, x);
    for (std::size_t i = 0; i < m; ++i) amps[b.index[i]] = x[i];
  }
}

DickeState QuadraticPropagator::evolve(const DickeState& state, double duration) const {
  if (!(state.spin() == j_)) throw DomainError("QuadraticPropagator: spin length mismatch");
  auto amps = copy_amps(state);
  evolve_in_place(amps, duration);
  return DickeState(j_, std::move(amps));
}

QuadraticPropagator::Trajectory QuadraticPropagator::trajectory(const DickeState& initial) const& {
  if (!(initial.spin() == j_)) throw DomainError("QuadraticPropagator: spin length mismatch");
  Trajectory tr;
  tr.owner_ = this;
  if (diagonal_) {
    tr.coeffs_.push_back(copy_amps(initial));
    return tr;
  }
  for (const auto& b : blocks_) {
    const std::size_t m = b.index.size();
    std::vector<Complex> x(m), c(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = initial[b.index[i]];
    kernels::real_matvec(b.vt, m, x, c);
    tr.coeffs_.push_back(std::move(c));
  }
  return tr;
}

std::vector<Complex> QuadraticPropagator::Trajectory::amplitudes_at(double t) const {
  require_duration(t);
  const auto& p = *owner_;
  std::vector<Complex> amps(p.j_.dim());
  if (p.diagonal_) {
    for (std::size_t k = 0; k < amps.size(); ++k) amps[k] = coeffs_[0][k] * std::polar(1.0, -p.diag_energy_[k] * t);
    return amps;
  }
  for (std::size_t bi = 0; bi < p.blocks_.size(); ++bi) {
    const auto& b = p.blocks_[bi];
    const std::size_t m = b.index.size();
    std::vector<Complex> c(m), x(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = coeffs_[bi][i] * std::polar(1.0, -b.energy[i] * t);
    kernels::real_matvec(b.v, m, c, x);
    for (std::size_t i = 0; i < m; ++i) amps[b.index[i]] = x[i];
  }
  return amps;
}

DickeState QuadraticPropagator::Trajectory::at(double t) const {
  auto amps = amplitudes_at(t);
  // Rounding in the eigenvector products can leave ~1e-14 norm error; restore it.
  const double n2 = kernels::norm_squared(amps);
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& a : amps) a *= scale;
  return DickeState(owner_->j_, std::move(amps));
}

// ---------------------------------------------------------------------------
// DrivenIntegrator
//
// Frame map: with V the Jx eigenbasis (V^T Jz V = -Jx) and W = Rz(pi/2) V,
// W^dag Jy W = Jz, W^dag Jz W = -Jx, W^dag Jx W = -Jy (standard matrices).

DrivenIntegrator::DrivenIntegrator(const DickeState& initial, double chi, const DriveEnvelope& drive, double t0,
                                   int steps_per_period)
    : j_(initial.spin()),
      chi_(chi),
      drive_(drive),
      h_(0.0),
      t_(t0),
      y_(initial.dim()),
      twist_op_(BandedHermitian::from_quadratic(initial.spin(), QuadraticForm{.xx = chi})),
      twist_hi_(chi * initial.spin().value() * initial.spin().value()) {
  drive.validate();
  if (steps_per_period < 16) throw DomainError("steps_per_period must be at least 16");
  if (!std::isfinite(t0) || t0 < 0.0) throw DomainError("driven evolution must start at t0 >= 0");
  h_ = drive.period() / steps_per_period;
  if (!(h_ > 0.0) || t0 + h_ == t0) throw DomainError("driven substep underflows");
  auto lab = copy_amps(initial);
  rotate_z_in_place(j_, lab, -kHalfPi);
  detail::JxEigenbasis::get(j_)->to_eigenbasis(lab, y_);
}

void DrivenIntegrator::twist(double tau) {
  if (tau == 0.0 || chi_ == 0.0) return;
  expm_taylor_apply(twist_op_, 0.0, twist_hi_, tau, y_);
}

void DrivenIntegrator::step(double a, double b, bool flush) {
  const double tau = b - a;
  // The trailing half-twist of the previous substep is merged into this one.
  pending_twist_ += 0.5 * tau;
  twist(pending_twist_);
  pending_twist_ = 0.0;
  kernels::apply_phases(y_, j_.value(), drive_integral(drive_, a, b), 0.0);
  pending_twist_ = 0.5 * tau;
  if (flush) {
    twist(pending_twist_);
    pending_twist_ = 0.0;
  }
  ++steps_;
  const double n2 = kernels::norm_squared(y_);
  const double drift = std::abs(n2 - 1.0);
  max_drift_ = std::max(max_drift_, drift);
  if (drift > 1e-12) {
    const double s = 1.0 / std::sqrt(n2);
    for (auto& c : y_) c *= s;
    ++renormalizations_;
  }
}

void DrivenIntegrator::advance_to(double t) {
  if (!(t >= t_ - 1e-15 * std::max(1.0, t_))) throw DomainError("DrivenIntegrator cannot run backwards");
  if (t <= t_) return;
  // Grid index of the current time; tolerate rounding at grid points.
  auto next_grid = [&](double now) {
    const double k = std::floor(now / h_ * (1.0 + 1e-14) + 1e-9);
    return (k + 1.0) * h_;
  };
  while (t_ < t) {
    const double g = next_grid(t_);
    const double b = (g >= t || t - g <= 1e-12 * h_) ? t : g;
    step(t_, b, b >= t);
    t_ = b;
  }
}

DickeState DrivenIntegrator::state() const {
  std::vector<Complex> lab(y_.size());
  detail::JxEigenbasis::get(j_)->from_eigenbasis(y_, lab);
  rotate_z_in_place(j_, lab, kHalfPi);
  const double s = 1.0 / std::sqrt(kernels::norm_squared(lab));
  for (auto& c : lab) c *= s;
  return DickeState(j_, std::move(lab));
}

SpinMoments DrivenIntegrator::moments() const {
  const auto f = spin_moments(j_, y_);
  // lab axis a is frame axis perm[a] with sign sign[a].
  constexpr int perm[3] = {1, 2, 0};
  constexpr double sign[3] = {-1.0, 1.0, -1.0};
  SpinMoments out;
  for (int a = 0; a < 3; ++a) {
    out.mean[a] = sign[a] * f.mean[perm[a]];
    for (int b = 0; b < 3; ++b) out.second[a][b] = sign[a] * sign[b] * f.second[perm[a]][perm[b]];
  }
  return out;
}

DickeState evolve_driven(const DickeState& state, double chi, const DriveEnvelope& drive, double t0, double t1,
                         int steps_per_period) {
  if (!(t1 >= t0)) throw DomainError("evolve_driven requires t1 >= t0");
  DrivenIntegrator integ(state, chi, drive, t0, steps_per_period);
  integ.advance_to(t1);
  return integ.state();
}

DoublingCheck driven_doubling_check(const DickeState& state, double chi, const DriveEnvelope& drive, double t0,
                                    double t1, int steps_per_period) {
  const auto a = evolve_driven(state, chi, drive, t0, t1, steps_per_period);
  const auto b = evolve_driven(state, chi, drive, t0, t1, 2 * steps_per_period);
  return {steps_per_period, 1.0 - fidelity(a, b)};
}

// ---------------------------------------------------------------------------
// Schedules

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::pair<DickeState, RunRecord> evolve_schedule(const DickeState& initial, const ProtocolSchedule& schedule,
                                                 const EvolveOptions& options) {
  const auto j = initial.spin();
  RunRecord record;
  record.particles = j.particles();
  record.chi = options.chi;
  record.seed = options.seed;
  record.schedule_digest = content_digest(schedule.describe());

  auto amps = copy_amps(initial);
  const auto samples = schedule.sample_times();
  std::size_t next_sample = 0;
  double now = 0.0;
  std::optional<double> freeze_pending;

  auto report_amps = [&](std::span<const Complex> a) { return squeezing_report(j, spin_moments(j, a)); };
  auto settle_freeze = [&] {
    if (freeze_pending && options.on_freeze) options.on_freeze(*freeze_pending, DickeState(j, amps));
    freeze_pending.reset();
  };
  auto renormalize = [&] {
    const double n2 = kernels::norm_squared(amps);
    if (std::abs(n2 - 1.0) > 1e-12) {
      const double s = 1.0 / std::sqrt(n2);
      for (auto& c : amps) c *= s;
    }
  };

  for (const auto& segment : schedule.segments()) {
    std::visit(
        Overloaded{
            [&](const Pulse& p) { rotate_in_place(j, amps, p.rotation.scaled(p.area_scale)); },
            [&](const FreezeMarker& f) {
              freeze_pending = f.time;
              record.add_event("freeze", options.chi * f.time);
            },
            [&](const QuadraticSegment& q) {
              settle_freeze();
              const double end = now + q.duration;
              double t = now;
              while (next_sample < samples.size() && samples[next_sample] < end) {
                const double ts = std::max(samples[next_sample], t);
                evolve_quadratic_axis_in_place(j, amps, q.axis, q.chi, ts - t);
                t = ts;
                record.add_sample(options.chi * samples[next_sample], report_amps(amps));
                ++next_sample;
              }
              evolve_quadratic_axis_in_place(j, amps, q.axis, q.chi, end - t);
              renormalize();
              now = end;
            },
            [&](const DrivenSegment& d) {
              settle_freeze();
              DrivenIntegrator integ(DickeState(j, amps), d.chi, d.drive, d.t0, d.steps_per_period);
              while (next_sample < samples.size() && samples[next_sample] < d.t1) {
                integ.advance_to(std::max(samples[next_sample], integ.time()));
                record.add_sample(options.chi * samples[next_sample], squeezing_report(j, integ.moments()));
                ++next_sample;
              }
              integ.advance_to(d.t1);
              if (integ.renormalizations() > 0)
                record.add_event("renormalized", options.chi * d.t1,
                                 std::to_string(integ.renormalizations()) + " steps, max drift " +
                                     std::to_string(integ.max_norm_drift()));
              const auto s = integ.state();
              amps.assign(s.amplitudes().begin(), s.amplitudes().end());
              now = d.t1;
            }},
        segment);
  }
  settle_freeze();
  const double tol = 1e-12 * std::max(1.0, now);
  while (next_sample < samples.size() && samples[next_sample] <= now + tol) {
    record.add_sample(options.chi * samples[next_sample], report_amps(amps));
    ++next_sample;
  }
  if (next_sample < samples.size()) throw DomainError("sample time beyond the end of the schedule");
  return {DickeState(j, std::move(amps)), std::move(record)};
}

}  // namespace squeeze
