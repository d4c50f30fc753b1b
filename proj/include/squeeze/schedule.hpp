#pragma once

// Timeline of evolution segments, instantaneous pulses and freeze markers.
// Times are in units of chi t.

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "squeeze/hamiltonians.hpp"
#include "squeeze/spin.hpp"

namespace squeeze {

/// Evolution under chi J_axis^2 for `duration`.
struct QuadraticSegment {
  Axis axis = Axis::Z;
  double chi = 1.0;
  double duration = 0.0;
};

/// Evolution under chi Jz^2 + Omega(t) Jy over [t0, t1] (absolute times).
struct DrivenSegment {
  DriveEnvelope drive;
  double chi = 1.0;
  double t0 = 0.0;
  double t1 = 0.0;
  int steps_per_period = 64;
};

/// Instantaneous rotation; the applied angle is rotation.angle() * area_scale.
struct Pulse {
  RotationSpec rotation = RotationSpec::about_z(0.0);
  double area_scale = 1.0;
  std::string label;
};

struct FreezeMarker {
  double time = 0.0;
};

using Segment = std::variant<QuadraticSegment, DrivenSegment, Pulse, FreezeMarker>;

class ProtocolSchedule {
 public:
  /// Appends a segment; throws DomainError if it is not contiguous with the
  /// current end time, has a negative duration, or a non-positive area scale.
  void add(Segment segment);
  /// Sorted, non-negative sample times; throws DomainError otherwise.
  void set_sample_times(std::vector<double> times);

  std::span<const Segment> segments() const noexcept { return segments_; }
  std::span<const double> sample_times() const noexcept { return samples_; }
  double end_time() const noexcept { return end_; }
  std::size_t pulse_count() const;

  /// Copy with the i-th pulse's area scale multiplied by factors[i].
  ProtocolSchedule with_pulse_factors(std::span<const double> factors) const;

  /// Stable textual description, hashed into run provenance.
  std::string describe() const;

 private:
  std::vector<Segment> segments_;
  std::vector<double> samples_;
  double end_ = 0.0;
};

/// FNV-1a of a string, hex encoded.
std::string content_digest(std::string_view text);

}  // namespace squeeze
