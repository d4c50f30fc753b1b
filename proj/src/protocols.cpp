#include "squeeze/protocols.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <random>

#include "squeeze/errors.hpp"
#include "squeeze/propagator.hpp"

namespace squeeze {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::vector<double> uniform_times(double lo, double hi, std::size_t count) {
  std::vector<double> out;
  if (count == 0) return out;
  if (count == 1) return {hi};
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
  return out;
}

double var_jz(const DickeState& s) { return m_distribution(s).variance; }

// Chooses the sign of every rotation angle (all 2^k combinations) so that the
// rotated state has the smallest Var(Jz).
std::vector<RotationSpec> resolve_signs(const DickeState& state, const std::vector<RotationSpec>& rotations,
                                        std::string& detail) {
  const std::size_t k = rotations.size();
  double best = INFINITY;
  std::size_t best_mask = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    DickeState s = state;
    for (std::size_t r = 0; r < k; ++r) s = rotate(s, (mask >> r) & 1 ? rotations[r].inverse() : rotations[r]);
    const double v = var_jz(s);
    if (v < best) {
      best = v;
      best_mask = mask;
    }
  }
  std::vector<RotationSpec> out;
  for (std::size_t r = 0; r < k; ++r) {
    out.push_back((best_mask >> r) & 1 ? rotations[r].inverse() : rotations[r]);
    const auto& a = out.back().axis();
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s(%.3g,%.3g,%.3g) %+.6f", r ? "; " : "", a[0], a[1], a[2], out.back().angle());
    detail += buf;
  }
  detail += fmt("; var_jz %.6g", best);
  return out;
}

void validate_freeze(const FreezePolicy& f) {
  if (!(f.window > 0.0 && f.window < 1.0)) throw DomainError("freeze window must lie in (0, 1)");
  if (!(f.hold >= 0.0) || !std::isfinite(f.hold)) throw DomainError("freeze hold must be non-negative");
}

}  // namespace

double tact_optimal_time(int particles) {
  if (particles < 2) throw DomainError("optimal time needs N >= 2");
  return std::log(4.0 * particles) / (2.0 * particles);
}

double oat_optimal_time(int particles) {
  if (particles < 2) throw DomainError("optimal time needs N >= 2");
  return std::pow(6.0, 1.0 / 6.0) * std::pow(static_cast<double>(particles), -2.0 / 3.0);
}

void NoiseModel::validate() const {
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw DomainError("noise eta must be finite and non-negative");
}

std::vector<double> pulse_factors(const NoiseModel& noise, std::size_t pulses, std::uint64_t realization) {
  noise.validate();
  std::seed_seq seq{static_cast<std::uint32_t>(noise.seed), static_cast<std::uint32_t>(noise.seed >> 32),
                    static_cast<std::uint32_t>(realization), static_cast<std::uint32_t>(realization >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> r(-0.5, 0.5);
  std::vector<double> out(pulses);
  if (noise.draw_scope == NoiseModel::DrawScope::PerRealization) {
    const double f = 1.0 + r(rng) * noise.eta;
    std::fill(out.begin(), out.end(), f);
  } else {
    for (auto& f : out) f = 1.0 + r(rng) * noise.eta;
  }
  return out;
}

PulseTiming pulse_timing(int particles, double chi, int periods) {
  if (periods < 1) throw DomainError("periods must be at least 1");
  if (!(chi > 0.0)) throw DomainError("chi must be positive");
  PulseTiming t;
  t.t_opt = 3.0 * tact_optimal_time(particles) / chi;
  t.delta_t = t.t_opt / (3.0 * periods);
  t.period = 3.0 * t.delta_t;
  t.trotter_parameter = 2.0 * chi * t.delta_t * particles;
  return t;
}

Protocol build_repeated_pulse(int particles, double chi, int periods, const std::optional<FreezePolicy>& freeze) {
  const auto timing = pulse_timing(particles, chi, periods);
  const auto j = SpinLength::from_particles(particles);
  const double dt = timing.delta_t;
  const double tc = timing.period;

  Protocol p{.schedule = {}, .initial = make_dicke_state(j, j.value()), .chi = chi, .t_opt = timing.t_opt};
  if (timing.trotter_parameter >= 1.0)
    p.warnings.push_back(fmt("2 chi dt N = %.4g is not small; the effective TACT description is unreliable",
                             timing.trotter_parameter));

  auto& sched = p.schedule;
  auto full_period = [&] {
    sched.add(Pulse{RotationSpec::about_y(-0.5 * kPi), 1.0, "y-"});
    sched.add(QuadraticSegment{Axis::Z, chi, 2.0 * dt});
    sched.add(Pulse{RotationSpec::about_y(0.5 * kPi), 1.0, "y+"});
    sched.add(QuadraticSegment{Axis::Z, chi, dt});
  };

  std::vector<double> samples;
  if (!freeze) {
    for (int n = 0; n < periods; ++n) {
      full_period();
      samples.push_back(n * tc + dt);
      samples.push_back(n * tc + 2.5 * dt);
    }
    sched.set_sample_times(samples);
    return p;
  }

  validate_freeze(*freeze);
  std::vector<RotationSpec> rotations = freeze->rotations;
  if (rotations.empty()) rotations.push_back(RotationSpec({-1.0, 0.0, 0.0}, 0.25 * kPi));

  // Probe run over the candidate trigger points n t_c + dt.
  int first = 0, last = 0;
  if (freeze->trigger == FreezePolicy::Trigger::AnalyticTime) {
    first = last = std::max(0, static_cast<int>(std::lround((timing.t_opt - dt) / tc)));
  } else {
    first = std::max(0, static_cast<int>(std::ceil((timing.t_opt * (1.0 - freeze->window) - dt) / tc)));
    last = static_cast<int>(std::floor((timing.t_opt * (1.0 + freeze->window) - dt) / tc));
  }
  std::vector<Complex> amps(p.initial.amplitudes().begin(), p.initial.amplitudes().end());
  int trigger = first;
  double best = INFINITY;
  std::optional<DickeState> trigger_state;
  for (int n = 0; n <= last; ++n) {
    rotate_y_in_place(j, amps, -0.5 * kPi);
    evolve_quadratic_axis_in_place(j, amps, Axis::Z, chi, dt);
    if (n >= first) {
      const double xi2 = squeezing_report(j, spin_moments(j, amps)).xi2;
      if (xi2 < best) {
        best = xi2;
        trigger = n;
        trigger_state.emplace(j, amps);
      }
    }
    evolve_quadratic_axis_in_place(j, amps, Axis::Z, chi, dt);
    rotate_y_in_place(j, amps, 0.5 * kPi);
    evolve_quadratic_axis_in_place(j, amps, Axis::Z, chi, dt);
  }

  const double t_freeze = trigger * tc + dt;
  std::string detail;
  const auto signed_rotations = resolve_signs(*trigger_state, rotations, detail);
  p.freeze_time = t_freeze;
  p.events.push_back({"freeze-trigger", chi * t_freeze,
                      fmt(freeze->trigger == FreezePolicy::Trigger::AnalyticTime ? "analytic, period %.0f, xi2 %.6g"
                                                                                 : "numeric minimum, period %.0f, xi2 %.6g",
                          trigger, best)});
  p.events.push_back({"freeze-signs", chi * t_freeze, detail});

  for (int n = 0; n < trigger; ++n) {
    full_period();
    samples.push_back(n * tc + dt);
    samples.push_back(n * tc + 2.5 * dt);
  }
  sched.add(Pulse{RotationSpec::about_y(-0.5 * kPi), 1.0, "y-"});
  sched.add(QuadraticSegment{Axis::Z, chi, dt});
  sched.add(FreezeMarker{t_freeze});
  for (const auto& r : signed_rotations) sched.add(Pulse{r, 1.0, "freeze"});
  const double hold = freeze->hold * timing.t_opt;
  sched.add(QuadraticSegment{Axis::Z, chi, hold});
  samples.push_back(t_freeze);
  const auto after = uniform_times(t_freeze, t_freeze + hold, 401);
  samples.insert(samples.end(), after.begin() + 1, after.end());
  sched.set_sample_times(samples);
  return p;
}

std::vector<double> drive_zero_times(const DriveEnvelope& drive, double lo, double hi) {
  drive.validate();
  std::vector<double> out;
  if (hi < lo) return out;
  // omega t + phase = pi/2 + k pi
  const double base = 0.5 * kPi - drive.phase;
  const auto k0 = static_cast<long long>(std::ceil((drive.omega * lo - base) / kPi - 1e-12));
  for (long long k = k0;; ++k) {
    const double t = (base + k * kPi) / drive.omega;
    if (t > hi * (1.0 + 1e-15)) break;
    if (t >= 0.0 && t >= lo * (1.0 - 1e-15)) out.push_back(t);
  }
  return out;
}

Protocol build_modulated_drive(int particles, double chi, const DriveSettings& s,
                               const std::optional<FreezePolicy>& freeze) {
  if (!(chi > 0.0)) throw DomainError("chi must be positive");
  if (!(s.omega_over_chi > 0.0)) throw DomainError("omega_over_chi must be positive");
  if (!(s.omega0_over_omega >= 0.0)) throw DomainError("omega0_over_omega must be non-negative");
  if (particles < 2) throw DomainError("drive protocol needs N >= 2");
  const auto j = SpinLength::from_particles(particles);
  const double omega = s.omega_over_chi * chi;
  const DriveEnvelope drive{s.omega0_over_omega * omega, omega, s.phase};
  drive.validate();
  const auto eff = build_effective(j, chi, drive.omega0, drive.omega, drive.phase);

  const double t_opt = eff.alpha0 < 1.0 - 1e-12 ? tact_optimal_time(particles) / (chi * (1.0 - eff.alpha0))
                                                : oat_optimal_time(particles) / chi;
  Protocol p{.schedule = {}, .initial = rotate(make_css(j, 0.5 * kPi, 0.0), eff.frame), .chi = chi, .t_opt = t_opt};
  if (s.omega_over_chi < 10.0 * particles)
    p.warnings.push_back(fmt("omega/chi = %.4g is not large compared with N = %.0f", s.omega_over_chi, particles));

  auto& sched = p.schedule;
  if (!freeze) {
    const double end = s.duration * t_opt;
    sched.add(DrivenSegment{drive, chi, 0.0, end, s.steps_per_period});
    sched.set_sample_times(uniform_times(0.0, end, s.samples));
    return p;
  }

  validate_freeze(*freeze);
  std::vector<RotationSpec> rotations = freeze->rotations;
  if (rotations.empty()) {
    rotations.push_back(RotationSpec::about_y(s.omega0_over_omega));
    rotations.push_back(RotationSpec({-1.0, 0.0, 0.0}, 0.25 * kPi));
  }

  std::vector<double> candidates;
  if (freeze->trigger == FreezePolicy::Trigger::AnalyticTime) {
    const auto near = drive_zero_times(drive, std::max(0.0, t_opt - drive.period()), t_opt + drive.period());
    double best_gap = INFINITY;
    for (double t : near)
      if (std::abs(t - t_opt) < best_gap) {
        best_gap = std::abs(t - t_opt);
        candidates = {t};
      }
  } else {
    candidates = drive_zero_times(drive, t_opt * (1.0 - freeze->window), t_opt * (1.0 + freeze->window));
  }
  if (candidates.empty()) throw DomainError("no drive zero inside the freeze window");

  DrivenIntegrator probe(p.initial, chi, drive, 0.0, s.steps_per_period);
  double best = INFINITY, t_freeze = candidates.front();
  std::optional<DickeState> trigger_state;
  for (double t : candidates) {
    probe.advance_to(t);
    const double xi2 = squeezing_report(j, probe.moments()).xi2;
    if (xi2 < best) {
      best = xi2;
      t_freeze = t;
      trigger_state = probe.state();
    }
  }

  std::string detail;
  const auto signed_rotations = resolve_signs(*trigger_state, rotations, detail);
  p.freeze_time = t_freeze;
  p.events.push_back({"freeze-trigger", chi * t_freeze,
                      fmt(freeze->trigger == FreezePolicy::Trigger::AnalyticTime ? "analytic, drive zero, xi2 %.6g"
                                                                                 : "numeric minimum, drive zero, xi2 %.6g",
                          best)});
  p.events.push_back({"freeze-signs", chi * t_freeze, detail});

  sched.add(DrivenSegment{drive, chi, 0.0, t_freeze, s.steps_per_period});
  sched.add(FreezeMarker{t_freeze});
  for (const auto& r : signed_rotations) sched.add(Pulse{r, 1.0, "freeze"});
  const double hold = freeze->hold * t_opt;
  sched.add(QuadraticSegment{Axis::Z, chi, hold});
  auto samples = uniform_times(0.0, t_freeze, s.samples);
  const auto after = uniform_times(t_freeze, t_freeze + hold, s.samples);
  samples.insert(samples.end(), after.begin() + 1, after.end());
  sched.set_sample_times(samples);
  return p;
}

RunRecord run_protocol(const ProtocolSchedule& schedule, const DickeState& initial, double chi,
                       const std::optional<NoiseModel>& noise, std::uint64_t realization) {
  EvolveOptions opts;
  opts.chi = chi;
  if (!noise) return evolve_schedule(initial, schedule, opts).second;
  opts.seed = noise->seed;
  const auto factors = pulse_factors(*noise, schedule.pulse_count(), realization);
  auto record = evolve_schedule(initial, schedule.with_pulse_factors(factors), opts).second;
  record.add_event("noise", 0.0,
                   fmt("eta %.6g, realization %.0f", noise->eta, static_cast<double>(realization)) +
                       (noise->draw_scope == NoiseModel::DrawScope::PerPulse ? ", per pulse" : ", per realization"));
  return record;
}

MonteCarloResult run_monte_carlo(const ProtocolSchedule& schedule, const DickeState& initial, double chi,
                                 const NoiseModel& noise, std::size_t realizations) {
  if (realizations < 1) throw DomainError("realizations must be at least 1");
  noise.validate();
  MonteCarloResult out;
  out.realizations.resize(realizations);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t r = 0; r < realizations; ++r) {
    try {
      out.realizations[r] = run_protocol(schedule, initial, chi, noise, r);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  const auto& first = out.realizations.front();
  out.mean.particles = first.particles;
  out.mean.chi = first.chi;
  out.mean.schedule_digest = first.schedule_digest;
  out.mean.seed = noise.seed;
  const double w = 1.0 / static_cast<double>(realizations);
  for (std::size_t i = 0; i < first.samples.size(); ++i) {
    SqueezingReport m{};
    m.xi2 = m.theta_min = m.var_min = m.var_max = 0.0;
    m.mean_spin = {0.0, 0.0, 0.0};
    for (const auto& rec : out.realizations) {
      const auto& r = rec.samples[i].report;
      m.xi2 += w * r.xi2;
      m.theta_min += w * r.theta_min;
      m.var_min += w * r.var_min;
      m.var_max += w * r.var_max;
      for (int a = 0; a < 3; ++a) m.mean_spin[a] += w * r.mean_spin[a];
    }
    out.mean.add_sample(first.samples[i].chi_t, m);
  }
  out.mean.add_event("ensemble", 0.0, fmt("%.0f realizations, eta %.6g", static_cast<double>(realizations), noise.eta));
  return out;
}

RunRecord reference_run(int particles, double chi, ReferenceModel model, std::size_t samples) {
  if (!(chi > 0.0)) throw DomainError("chi must be positive");
  if (samples < 3) throw DomainError("reference run needs at least 3 samples");
  const auto j = SpinLength::from_particles(particles);
  const bool oat = model == ReferenceModel::Oat;
  const double t_end = 3.0 * (oat ? oat_optimal_time(particles) : tact_optimal_time(particles)) / chi;
  const QuadraticPropagator prop(j, oat ? QuadraticForm{.zz = chi} : QuadraticForm{.zz = chi, .yy = -chi});
  const auto traj = prop.trajectory(make_css(j, 0.5 * kPi, 0.0));

  RunRecord rec;
  rec.particles = particles;
  rec.chi = chi;
  rec.schedule_digest = content_digest(fmt(oat ? "reference oat N=%.0f chi=%.17g" : "reference tact N=%.0f chi=%.17g",
                                           particles, chi));
  for (double t : uniform_times(0.0, t_end, samples)) {
    const auto amps = traj.amplitudes_at(t);
    rec.add_sample(chi * t, squeezing_report(j, spin_moments(j, amps)));
  }
  return rec;
}

UnitReport unit_report(int particles, int periods, double chi_hz) {
  if (!(chi_hz > 0.0)) throw DomainError("chi_hz must be positive");
  const double chi = 2.0 * kPi * chi_hz;
  const auto t = pulse_timing(particles, chi, periods);
  return {chi, t.t_opt, t.delta_t, t.period, periods * t.period};
}

}  // namespace squeeze
