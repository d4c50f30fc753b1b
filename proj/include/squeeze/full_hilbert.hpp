#pragma once

// Brute-force evolution on the 2^N tensor-product space, for validating the
// symmetric-subspace reduction at small N.

#include <span>
#include <variant>
#include <vector>

#include "squeeze/banded.hpp"
#include "squeeze/hamiltonians.hpp"
#include "squeeze/schedule.hpp"
#include "squeeze/spin.hpp"

namespace squeeze::oracle {

inline constexpr int kMaxParticles = 10;

/// exp(-i t [form + linear . J]).
struct StaticEvolution {
  QuadraticForm form;
  Vec3 linear{};
  double duration = 0.0;
};

/// chi Jz^2 + Omega(t) Jy over [t0, t1], fourth-order Magnus with Gauss
/// points on `steps` substeps per drive period.
struct DrivenEvolution {
  double chi = 1.0;
  DriveEnvelope drive;
  double t0 = 0.0;
  double t1 = 0.0;
  int steps = 256;
};

struct RotationStep {
  RotationSpec rotation;
};

using Step = std::variant<StaticEvolution, DrivenEvolution, RotationStep>;

struct Result {
  DickeState state;
  /// 1 - |projection onto the symmetric subspace|^2.
  double norm_deficit = 0.0;
};

/// Embeds `initial` in the product space, applies the steps and projects
/// back. Throws ResourceError for more than kMaxParticles spins.
Result full_hilbert_evolve(const DickeState& initial, std::span<const Step> steps);

/// Single generator for `duration`; Driven forms run from t = 0.
Result full_hilbert_oracle(int particles, const HamiltonianSpec& spec, const DickeState& initial, double duration);

/// Same timeline as a schedule; freeze markers are dropped.
std::vector<Step> steps_from_schedule(const ProtocolSchedule& schedule);

}  // namespace squeeze::oracle
