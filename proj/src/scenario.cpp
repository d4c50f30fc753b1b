#include "squeeze/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <filesystem>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "squeeze/errors.hpp"
#include "squeeze/io.hpp"
#include "squeeze/kernels.hpp"
#include "squeeze/propagator.hpp"
#include "squeeze/protocols.hpp"

namespace squeeze {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::pair<Scenario, const char*> kNames[] = {
    {Scenario::Oat, "oat"},       {Scenario::Tact, "tact"},     {Scenario::Pulses, "pulses"},
    {Scenario::Drive, "drive"},   {Scenario::Husimi, "husimi"}, {Scenario::Sweep, "sweep"},
    {Scenario::Noise, "noise"},
};

const char* summary(Scenario s) {
  switch (s) {
    case Scenario::Oat: return "one-axis twisting from the x coherent state";
    case Scenario::Tact: return "two-axis countertwisting from the x coherent state";
    case Scenario::Pulses: return "repeated pi/2 pulse pairs, optionally frozen at the optimum";
    case Scenario::Drive: return "modulated Rabi drive, optionally frozen at a drive zero";
    case Scenario::Husimi: return "Husimi Q grid of a saved state";
    case Scenario::Sweep: return "minimum squeezing against N with a power-law fit";
    case Scenario::Noise: return "Monte Carlo over pulse-area noise";
  }
  return "";
}

void fail(const std::string& field, const std::string& why) { throw UsageError("--" + field + ": " + why); }

void validate(const ScenarioConfig& c) {
  if (c.scenario != Scenario::Husimi && c.scenario != Scenario::Sweep && c.n < 2) fail("n", "must be at least 2");
  if (c.nc < 1) fail("nc", "must be at least 1");
  if (!(c.eta >= 0.0) || !std::isfinite(c.eta)) fail("eta", "must be a non-negative number");
  if (c.realizations < 1) fail("realizations", "must be at least 1");
  if (c.draw_scope != "per-pulse" && c.draw_scope != "per-realization")
    fail("draw-scope", "must be per-pulse or per-realization");
  if (!(c.omega_over_chi > 0.0) || !std::isfinite(c.omega_over_chi)) fail("omega-over-chi", "must be positive");
  if (!(c.omega0_over_omega >= 0.0) || !std::isfinite(c.omega0_over_omega))
    fail("omega0-over-omega", "must be non-negative");
  if (!std::isfinite(c.phase)) fail("phase", "must be finite");
  if (c.steps_per_period < 16) fail("steps-per-period", "must be at least 16");
  if (c.grid_theta < 16 || c.grid_phi < 32) fail("grid", "must be at least 16x32");
  if (c.samples < 3) fail("samples", "must be at least 3");
  if (c.chi_hz && !(*c.chi_hz > 0.0 && std::isfinite(*c.chi_hz))) fail("chi-hz", "must be positive");
  if (c.out.empty()) fail("out", "must not be empty");
  if (c.scenario == Scenario::Sweep) {
    if (c.model != "oat" && c.model != "tact") fail("model", "must be oat or tact");
    auto sorted = c.n_list;
    std::sort(sorted.begin(), sorted.end());
    if (std::unique(sorted.begin(), sorted.end()) - sorted.begin() < 3) fail("n-list", "needs at least 3 distinct N");
    if (sorted.front() < 2) fail("n-list", "every N must be at least 2");
  }
  if (c.scenario == Scenario::Husimi && c.state.empty()) fail("state", "a state snapshot is required");
}

std::string json_to_arg(const std::string& key, const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) {
      if (!s.empty()) s += ',';
      s += e.is_string() ? e.get<std::string>() : e.dump();
    }
    return s;
  }
  if (v.is_number() || v.is_boolean()) return v.dump();
  throw UsageError("config key '" + key + "' has an unsupported value");
}

}  // namespace

std::string scenario_name(Scenario s) {
  for (const auto& [k, name] : kNames)
    if (k == s) return name;
  return "unknown";
}

std::optional<ScenarioConfig> parse_config(const std::vector<std::string>& args, std::ostream& out) {
  ScenarioConfig c;
  CLI::App app{"Spin-squeezing simulator: OAT/TACT references, pulse and drive protocols, freezing.", "squeeze"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  std::string config_path, grid;
  double chi_hz = 0.0;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [kind, name] : kNames) {
    auto* s = app.add_subcommand(name, summary(kind));
    subs[name] = s;
    s->add_option("--config", config_path, "flat JSON file of flag values");
    s->add_option("--out", c.out, "output directory");
    s->add_option("--samples", c.samples, "sample count of reference and drive curves");
    s->add_option("--chi-hz", chi_hz, "physical chi / 2pi in Hz; adds t_seconds columns");
    if (kind != Scenario::Husimi && kind != Scenario::Sweep) s->add_option("--n", c.n, "particle count");
    if (kind == Scenario::Pulses || kind == Scenario::Noise) s->add_option("--nc", c.nc, "pulse periods");
    if (kind == Scenario::Pulses || kind == Scenario::Noise || kind == Scenario::Drive)
      s->add_flag("--freeze", c.freeze, "freeze the squeezing at the optimum");
    if (kind == Scenario::Noise) {
      s->add_option("--eta", c.eta, "relative pulse-area noise");
      s->add_option("--realizations", c.realizations, "Monte Carlo realizations");
      s->add_option("--draw-scope", c.draw_scope, "per-pulse or per-realization");
      s->add_option("--seed", c.seed, "master seed");
    }
    if (kind == Scenario::Drive) {
      s->add_option("--omega-over-chi", c.omega_over_chi, "drive frequency in units of chi");
      s->add_option("--omega0-over-omega", c.omega0_over_omega, "drive amplitude over frequency");
      s->add_option("--phase", c.phase, "drive phase (rad)");
      s->add_option("--steps-per-period", c.steps_per_period, "integrator substeps per drive period");
    }
    if (kind == Scenario::Husimi) {
      s->add_option("--state", c.state, "state snapshot JSON");
      s->add_option("--grid", grid, "theta x phi grid, e.g. 128x256");
    }
    if (kind == Scenario::Sweep) {
      s->add_option("--n-list", c.n_list, "particle counts")->delimiter(',');
      s->add_option("--model", c.model, "oat or tact");
    }
  }

  std::vector<std::string> merged = args;
  // Config values go between the subcommand and the user's flags, so flags win.
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    if (path.empty()) continue;
    const auto sub = subs.find(args[0]);
    if (sub == subs.end()) break;
    Json doc;
    try {
      doc = Json::parse(io::read_file(path));
    } catch (const Json::exception& e) {
      throw UsageError("--config: " + path + " is not valid JSON (" + e.what() + ")");
    } catch (const IoError& e) {
      throw UsageError(std::string("--config: ") + e.what());
    }
    if (!doc.is_object()) throw UsageError("--config: expected a flat JSON object");
    std::vector<std::string> extra;
    for (const auto& [key, value] : doc.items()) {
      if (key == "scenario") {
        if (value != args[0]) throw UsageError("--config: scenario '" + json_to_arg(key, value) + "' does not match " + args[0]);
        continue;
      }
      const auto* opt = key == "config" ? nullptr : sub->second->get_option_no_throw("--" + key);
      if (!opt) throw UsageError("--config: unknown key '" + key + "' for " + args[0]);
      if (value.is_boolean())
        extra.push_back("--" + key + "=" + (value.get<bool>() ? "true" : "false"));
      else {
        extra.push_back("--" + key);
        extra.push_back(json_to_arg(key, value));
      }
    }
    merged.insert(merged.begin() + 1, extra.begin(), extra.end());
    break;
  }

  try {
    std::vector<std::string> reversed(merged.rbegin(), merged.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, out);
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, out);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const auto& [kind, name] : kNames)
    if (subs[name]->parsed()) {
      c.scenario = kind;
      if (subs[name]->get_option_no_throw("--chi-hz")->count() > 0) c.chi_hz = chi_hz;
    }
  if (!grid.empty()) {
    const auto x = grid.find('x');
    try {
      if (x == std::string::npos) throw std::invalid_argument("missing x");
      std::size_t used = 0;
      c.grid_theta = std::stoi(grid.substr(0, x), &used);
      if (used != x) throw std::invalid_argument("trailing text");
      c.grid_phi = std::stoi(grid.substr(x + 1), &used);
      if (used != grid.size() - x - 1) throw std::invalid_argument("trailing text");
    } catch (const std::logic_error&) {
      fail("grid", "expected THETAxPHI, e.g. 128x256");
    }
  }
  validate(c);
  return c;
}

std::string config_json(const ScenarioConfig& c) {
  Json j;
  j["scenario"] = scenario_name(c.scenario);
  j["n"] = c.n;
  j["nc"] = c.nc;
  j["freeze"] = c.freeze;
  j["eta"] = c.eta;
  j["realizations"] = c.realizations;
  j["draw-scope"] = c.draw_scope;
  j["omega-over-chi"] = c.omega_over_chi;
  j["omega0-over-omega"] = c.omega0_over_omega;
  j["phase"] = c.phase;
  j["steps-per-period"] = c.steps_per_period;
  j["grid"] = std::to_string(c.grid_theta) + "x" + std::to_string(c.grid_phi);
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["chi-hz"] = c.chi_hz ? Json(*c.chi_hz) : Json(nullptr);
  j["out"] = c.out;
  j["n-list"] = c.n_list;
  j["model"] = c.model;
  j["state"] = c.state;
  return j.dump(2);
}

namespace {

struct Run {
  const ScenarioConfig& config;
  std::ostream& log;
  double chi = 1.0;
  std::optional<double> physical_chi{};
  Json manifest{};
  Json outputs = Json::object();
  Json warnings = Json::array();

  std::filesystem::path path(const std::string& name) const { return std::filesystem::path(config.out) / name; }

  void emit(const std::string& name, const std::string& content) {
    io::write_file(path(name), content);
    outputs[name] = io::git_blob_digest(content);
    log << "wrote " << path(name).string() << '\n';
  }

  void emit_record(const std::string& name, const RunRecord& record) {
    std::ostringstream s;
    io::write_run_csv(s, record, physical_chi);
    emit(name, s.str());
  }

  void warn(const std::string& w) {
    warnings.push_back(w);
    log << "warning: " << w << '\n';
  }

  static Json events(const std::vector<RunEvent>& evs) {
    Json a = Json::array();
    for (const auto& e : evs) a.push_back({{"kind", e.kind}, {"chi_t", e.chi_t}, {"detail", e.detail}});
    return a;
  }

  void exact_integrator() {
    manifest["integrator"] = {{"method", "exact quadratic propagators and rotations"},
                              {"steps_per_period", nullptr},
                              {"doubling_infidelity", 0.0}};
  }

  void references() {
    const auto samples = static_cast<std::size_t>(config.samples);
    emit_record("reference_oat.csv", reference_run(config.n, chi, ReferenceModel::Oat, samples));
    emit_record("reference_tact.csv", reference_run(config.n, chi, ReferenceModel::Tact, samples));
  }

  void summarize(const RunRecord& rec) {
    if (rec.samples.empty()) return;
    const auto best = std::min_element(rec.samples.begin(), rec.samples.end(), [](const auto& a, const auto& b) {
      return a.report.xi2 < b.report.xi2;
    });
    manifest["summary"] = {{"min_xi2", best->report.xi2}, {"min_chi_t", best->chi_t}, {"samples", rec.samples.size()}};
    log << "min xi2 " << best->report.xi2 << " at chi t " << best->chi_t << '\n';
  }

  void oat_or_tact(ReferenceModel model, const char* file) {
    const auto rec = reference_run(config.n, chi, model, static_cast<std::size_t>(config.samples));
    const double first = rec.samples.front().chi_t, last = rec.samples.back().chi_t;
    const auto opt = find_optimum(rec, first, last);
    manifest["optimum"] = {{"chi_t", opt.chi_t}, {"xi2", opt.xi2}, {"at_boundary", opt.at_boundary}};
    manifest["analytic_chi_t_opt"] =
        model == ReferenceModel::Oat ? oat_optimal_time(config.n) : tact_optimal_time(config.n);
    exact_integrator();
    emit_record(file, rec);
    summarize(rec);
  }

  std::optional<FreezePolicy> freeze() const {
    if (!config.freeze) return std::nullopt;
    return FreezePolicy{};
  }

  void pulse_common(const Protocol& p) {
    for (const auto& w : p.warnings) warn(w);
    const auto t = pulse_timing(config.n, chi, config.nc);
    manifest["timing"] = {{"chi_delta_t", chi * t.delta_t},
                          {"chi_t_c", chi * t.period},
                          {"chi_t_opt", chi * t.t_opt},
                          {"two_chi_dt_n", t.trotter_parameter}};
    if (config.chi_hz) {
      const auto u = unit_report(config.n, config.nc, *config.chi_hz);
      manifest["units"] = {{"chi_rad_per_s", u.chi_rad_per_s}, {"t_opt_s", u.t_opt_s},    {"delta_t_s", u.delta_t_s},
                           {"t_c_s", u.period_s},             {"total_s", u.total_s}};
    }
    manifest["protocol_events"] = events(p.events);
    exact_integrator();
  }

  void snapshot_at_freeze(const Protocol& p) {
    if (!p.freeze_time) return;
    EvolveOptions opts;
    opts.chi = chi;
    std::optional<DickeState> frozen;
    opts.on_freeze = [&](double, const DickeState& s) { frozen = s; };
    evolve_schedule(p.initial, p.schedule, opts);
    if (frozen) {
      std::ostringstream s;
      io::write_state(s, *frozen);
      emit("freeze_state.json", s.str());
    }
  }

  void pulses() {
    const auto p = build_repeated_pulse(config.n, chi, config.nc, freeze());
    pulse_common(p);
    const auto rec = run_protocol(p.schedule, p.initial, chi);
    manifest["run_events"] = events(rec.events);
    manifest["schedule_digest"] = rec.schedule_digest;
    emit_record("pulses.csv", rec);
    references();
    snapshot_at_freeze(p);
    summarize(rec);
  }

  void noise() {
    const auto p = build_repeated_pulse(config.n, chi, config.nc, freeze());
    pulse_common(p);
    NoiseModel nm;
    nm.eta = config.eta;
    nm.seed = config.seed;
    nm.draw_scope = config.draw_scope == "per-pulse" ? NoiseModel::DrawScope::PerPulse
                                                     : NoiseModel::DrawScope::PerRealization;
    const auto mc =
        run_monte_carlo(p.schedule, p.initial, chi, nm, static_cast<std::size_t>(config.realizations));
    manifest["schedule_digest"] = mc.mean.schedule_digest;
    emit_record("noise_mean.csv", mc.mean);
    std::ostringstream s;
    s << "chi_t";
    for (std::size_t r = 0; r < mc.realizations.size(); ++r) s << ",xi2_" << r;
    s << '\n';
    char buf[40];
    for (std::size_t i = 0; i < mc.mean.samples.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", mc.mean.samples[i].chi_t);
      s << buf;
      for (const auto& rec : mc.realizations) {
        std::snprintf(buf, sizeof buf, ",%.17g", rec.samples[i].report.xi2);
        s << buf;
      }
      s << '\n';
    }
    emit("noise_realizations.csv", s.str());
    references();
    summarize(mc.mean);
  }

  void drive() {
    DriveSettings ds;
    ds.omega_over_chi = config.omega_over_chi;
    ds.omega0_over_omega = config.omega0_over_omega;
    ds.phase = config.phase;
    ds.steps_per_period = config.steps_per_period;
    ds.samples = static_cast<std::size_t>(config.samples);
    const auto p = build_modulated_drive(config.n, chi, ds, freeze());
    for (const auto& w : p.warnings) warn(w);
    manifest["protocol_events"] = events(p.events);
    const auto j = SpinLength::from_particles(config.n);
    const double omega = config.omega_over_chi * chi;
    const DriveEnvelope env{config.omega0_over_omega * omega, omega, config.phase};
    const auto eff = build_effective(j, chi, env.omega0, env.omega, env.phase);
    manifest["effective"] = {{"alpha0", eff.alpha0}, {"chi_t_opt", chi * p.t_opt}};

    const auto rec = run_protocol(p.schedule, p.initial, chi);
    manifest["run_events"] = events(rec.events);
    manifest["schedule_digest"] = rec.schedule_digest;
    emit_record("drive.csv", rec);

    // Effective generator from the undisplaced CSS; xi2 does not see the frame rotation.
    const double drive_end = p.freeze_time.value_or(p.schedule.end_time());
    const QuadraticPropagator prop(j, eff.form);
    const auto traj = prop.trajectory(make_css(j, 0.5 * std::numbers::pi, 0.0));
    RunRecord effective;
    effective.particles = config.n;
    effective.chi = chi;
    for (double t : p.schedule.sample_times()) {
      if (t > drive_end) break;
      effective.add_sample(chi * t, squeezing_report(j, spin_moments(j, traj.amplitudes_at(t))));
    }
    emit_record("effective.csv", effective);

    const auto check = driven_doubling_check(p.initial, chi, env, 0.0, drive_end, config.steps_per_period);
    manifest["integrator"] = {{"method", "Strang split-step, exact drive integral"},
                              {"steps_per_period", check.steps_per_period},
                              {"doubling_infidelity", check.infidelity}};
    log << "doubling check: 1 - F = " << check.infidelity << '\n';
    references();
    snapshot_at_freeze(p);
    summarize(rec);
  }

  void husimi() {
    const auto state = io::load_state(config.state);
    const auto grid = husimi_q(state, static_cast<std::size_t>(config.grid_theta),
                               static_cast<std::size_t>(config.grid_phi));
    manifest["normalization"] = grid.normalization(state.spin());
    manifest["state_digest"] = io::git_blob_digest(io::read_file(config.state));
    exact_integrator();
    std::ostringstream s;
    io::write_husimi_csv(s, grid);
    emit("husimi.csv", s.str());
  }

  void sweep() {
    const auto model = config.model == "oat" ? ReferenceModel::Oat : ReferenceModel::Tact;
    const auto& ns = config.n_list;
    std::vector<Optimum> optima(ns.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < ns.size(); ++i) {
      try {
        const auto rec = reference_run(ns[i], chi, model, static_cast<std::size_t>(config.samples));
        optima[i] = find_optimum(rec, rec.samples.front().chi_t, rec.samples.back().chi_t);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    std::vector<ScalingPoint> pts;
    std::ostringstream s;
    s << "n,chi_t_opt,xi2_min\n";
    char buf[96];
    for (std::size_t i = 0; i < ns.size(); ++i) {
      pts.push_back({static_cast<double>(ns[i]), optima[i].xi2});
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", ns[i], optima[i].chi_t, optima[i].xi2);
      s << buf;
    }
    const auto fit = scaling_fit(pts);
    manifest["fit"] = {{"exponent", fit.exponent}, {"prefactor", fit.prefactor}, {"residual", fit.residual}};
    exact_integrator();
    emit("sweep.csv", s.str());
    log << "scaling exponent " << fit.exponent << " (residual " << fit.residual << ")\n";
  }
};

}  // namespace

int run_scenario(const ScenarioConfig& config, std::ostream& log, std::ostream& err) {
  try {
    validate(config);
    Run run{config, log};
    if (config.chi_hz) {
      run.chi = 2.0 * std::numbers::pi * *config.chi_hz;
      run.physical_chi = run.chi;
    }
    run.manifest["scenario"] = scenario_name(config.scenario);
    run.manifest["config"] = Json::parse(config_json(config));
    run.manifest["threads"] = kernels::configure_threads();
    switch (config.scenario) {
      case Scenario::Oat: run.oat_or_tact(ReferenceModel::Oat, "oat.csv"); break;
      case Scenario::Tact: run.oat_or_tact(ReferenceModel::Tact, "tact.csv"); break;
      case Scenario::Pulses: run.pulses(); break;
      case Scenario::Noise: run.noise(); break;
      case Scenario::Drive: run.drive(); break;
      case Scenario::Husimi: run.husimi(); break;
      case Scenario::Sweep: run.sweep(); break;
    }
    run.manifest["warnings"] = run.warnings;
    run.manifest["outputs"] = run.outputs;
    // Content address of the run: hash over the output digests.
    run.manifest["digest"] = io::git_blob_digest(run.outputs.dump());
    io::write_file(run.path("manifest.json"), run.manifest.dump(2) + "\n");
    log << "wrote " << run.path("manifest.json").string() << '\n';
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace squeeze
