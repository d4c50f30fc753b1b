#include "squeeze/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "squeeze/errors.hpp"

namespace squeeze {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void ProtocolSchedule::add(Segment segment) {
  std::visit(Overloaded{[&](const QuadraticSegment& q) {
                          if (!(q.duration >= 0.0)) throw DomainError("segment duration must be non-negative");
                          if (!(q.chi >= 0.0)) throw DomainError("segment chi must be non-negative");
                          end_ += q.duration;
                        },
                        [&](const DrivenSegment& d) {
                          d.drive.validate();
                          if (!same_time(d.t0, end_))
                            throw DomainError("driven segment starts at " + fmt(d.t0) + " but schedule ends at " +
                                              fmt(end_) + " (overlap or gap)");
                          if (!(d.t1 >= d.t0)) throw DomainError("driven segment has t1 < t0");
                          if (d.steps_per_period < 16) throw DomainError("steps_per_period must be >= 16");
                          end_ = d.t1;
                        },
                        [&](const Pulse& p) {
                          if (!(p.area_scale > 0.0)) throw DomainError("pulse area scale must be positive");
                        },
                        [&](const FreezeMarker& f) {
                          if (!same_time(f.time, end_))
                            throw DomainError("freeze marker at " + fmt(f.time) + " does not match schedule time " +
                                              fmt(end_));
                        }},
             segment);
  segments_.push_back(std::move(segment));
}

void ProtocolSchedule::set_sample_times(std::vector<double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0)) throw DomainError("sample times must be non-negative");
    if (i > 0 && !(times[i] > times[i - 1])) throw DomainError("sample times must be strictly increasing");
  }
  samples_ = std::move(times);
}

std::size_t ProtocolSchedule::pulse_count() const {
  return static_cast<std::size_t>(
      std::count_if(segments_.begin(), segments_.end(), [](const Segment& s) { return std::holds_alternative<Pulse>(s); }));
}

ProtocolSchedule ProtocolSchedule::with_pulse_factors(std::span<const double> factors) const {
  if (factors.size() != pulse_count()) throw DomainError("pulse factor count does not match the schedule");
  ProtocolSchedule out = *this;
  std::size_t i = 0;
  for (auto& s : out.segments_) {
    if (auto* p = std::get_if<Pulse>(&s)) {
      p->area_scale *= factors[i++];
      if (!(p->area_scale > 0.0)) throw DomainError("pulse area scale must stay positive");
    }
  }
  return out;
}

std::string ProtocolSchedule::describe() const {
  std::string out;
  const char* axis_name[] = {"x", "y", "z"};
  for (const auto& s : segments_) {
    std::visit(Overloaded{[&](const QuadraticSegment& q) {
                            out += "Q " + std::string(axis_name[static_cast<int>(q.axis)]) + " " + fmt(q.chi) + " " +
                                   fmt(q.duration) + "\n";
                          },
                          [&](const DrivenSegment& d) {
                            out += "D " + fmt(d.drive.omega0) + " " + fmt(d.drive.omega) + " " + fmt(d.drive.phase) +
                                   " " + fmt(d.chi) + " " + fmt(d.t0) + " " + fmt(d.t1) + " " +
                                   std::to_string(d.steps_per_period) + "\n";
                          },
                          [&](const Pulse& p) {
                            const auto& a = p.rotation.axis();
                            out += "P " + fmt(a[0]) + " " + fmt(a[1]) + " " + fmt(a[2]) + " " +
                                   fmt(p.rotation.angle()) + " " + fmt(p.area_scale) + "\n";
                          },
                          [&](const FreezeMarker& f) { out += "F " + fmt(f.time) + "\n"; }},
               s);
  }
  out += "S";
  for (double t : samples_) out += " " + fmt(t);
  out += "\n";
  return out;
}

std::string content_digest(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace squeeze
