#include "squeeze/spin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "squeeze/errors.hpp"
#include "squeeze/kernels.hpp"
#include "squeeze/spin_basis.hpp"

namespace squeeze {

SpinLength SpinLength::from_particles(int n) {
  if (n < 1) throw DomainError("spin length requires at least one particle, got " + std::to_string(n));
  return SpinLength(n);
}

SpinLength SpinLength::from_value(double j) {
  const double twice = 2.0 * j;
  if (!std::isfinite(j) || j <= 0.0 || std::abs(twice - std::round(twice)) > 1e-12)
    throw DomainError("spin length must be a positive half-integer, got " + std::to_string(j));
  return SpinLength(static_cast<int>(std::lround(twice)));
}

double ladder_coefficient(SpinLength j, std::size_t k) {
  const double mk = j.m_at(k);
  return std::sqrt(std::max(0.0, j.casimir() - mk * (mk - 1.0)));
}

DickeState::DickeState(SpinLength j, std::vector<Complex> amplitudes) : j_(j), amps_(std::move(amplitudes)) {
  if (amps_.size() != j.dim())
    throw DomainError("Dicke state for 2j=" + std::to_string(j.twice()) + " needs " + std::to_string(j.dim()) +
                      " amplitudes, got " + std::to_string(amps_.size()));
  const double n2 = norm_squared();
  if (!(std::abs(n2 - 1.0) <= kNormTolerance))
    throw DomainError("Dicke state is not normalized: |psi|^2 = " + std::to_string(n2));
}

double DickeState::norm_squared() const { return kernels::norm_squared(amps_); }

Complex overlap(const DickeState& bra, const DickeState& ket) {
  if (!(bra.spin() == ket.spin())) throw DomainError("overlap of states with different spin length");
  Complex s{};
  for (std::size_t k = 0; k < bra.dim(); ++k) s += std::conj(bra[k]) * ket[k];
  return s;
}

double fidelity(const DickeState& a, const DickeState& b) { return std::abs(overlap(a, b)); }

SpinOperator::SpinOperator(SpinLength j, SpinComponent kind)
    : j_(j), kind_(kind), diag_(j.dim()), upper_(j.dim() - 1), lower_(j.dim() - 1) {}

SpinOperator SpinOperator::make(SpinLength j, SpinComponent kind) {
  SpinOperator op(j, kind);
  const std::size_t n = j.dim();
  if (kind == SpinComponent::Jz) {
    for (std::size_t k = 0; k < n; ++k) op.diag_[k] = j.m_at(k);
    return op;
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double b = ladder_coefficient(j, k);
    switch (kind) {
      case SpinComponent::Jplus: op.upper_[k] = b; break;
      case SpinComponent::Jminus: op.lower_[k] = b; break;
      case SpinComponent::Jx: op.upper_[k] = op.lower_[k] = 0.5 * b; break;
      case SpinComponent::Jy:
        op.upper_[k] = Complex{0.0, -0.5 * b};
        op.lower_[k] = Complex{0.0, 0.5 * b};
        break;
      case SpinComponent::Jz: break;
    }
  }
  return op;
}

Complex SpinOperator::entry(std::size_t row, std::size_t col) const {
  if (row == col) return diag_.at(row);
  if (col == row + 1) return upper_.at(row);
  if (row == col + 1) return lower_.at(col);
  return {};
}

std::vector<Complex> SpinOperator::apply(std::span<const Complex> v) const {
  const std::size_t n = diag_.size();
  if (v.size() != n) throw DomainError("operator/vector dimension mismatch");
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex s = diag_[k] * v[k];
    if (k + 1 < n) s += upper_[k] * v[k + 1];
    if (k >= 1) s += lower_[k - 1] * v[k - 1];
    out[k] = s;
  }
  return out;
}

namespace {

void require_same_spin(const DickeState& s, const SpinOperator& op) {
  if (!(s.spin() == op.spin()))
    throw DomainError("spin length mismatch: state 2j=" + std::to_string(s.spin().twice()) +
                      ", operator 2j=" + std::to_string(op.spin().twice()));
}

}  // namespace

double expectation(const DickeState& state, const SpinOperator& op) {
  require_same_spin(state, op);
  if (!op.hermitian()) throw DomainError("expectation() needs a Hermitian component; use pair_moment for J+/J-");
  const auto av = op.apply(state.amplitudes());
  Complex s{};
  for (std::size_t k = 0; k < av.size(); ++k) s += std::conj(state[k]) * av[k];
  return s.real();
}

Complex pair_moment(const DickeState& state, const SpinOperator& a, const SpinOperator& b) {
  require_same_spin(state, a);
  require_same_spin(state, b);
  const auto bv = b.apply(state.amplitudes());
  const auto abv = a.apply(bv);
  Complex s{};
  for (std::size_t k = 0; k < abv.size(); ++k) s += std::conj(state[k]) * abv[k];
  return s;
}

RotationSpec::RotationSpec(Vec3 axis, double angle) : axis_(axis), angle_(angle) {
  const double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (!(std::abs(len - 1.0) <= 1e-12)) throw DomainError("rotation axis must be a unit vector, |axis| = " + std::to_string(len));
  if (!std::isfinite(angle)) throw DomainError("rotation angle must be finite");
}

Vec3 RotationSpec::apply_classical(const Vec3& v) const {
  // Rodrigues' formula.
  const auto& n = axis_;
  const double c = std::cos(angle_), s = std::sin(angle_);
  const double dot = n[0] * v[0] + n[1] * v[1] + n[2] * v[2];
  const Vec3 cross{n[1] * v[2] - n[2] * v[1], n[2] * v[0] - n[0] * v[2], n[0] * v[1] - n[1] * v[0]};
  Vec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = v[i] * c + cross[i] * s + n[i] * dot * (1.0 - c);
  return out;
}

DickeState make_dicke_state(SpinLength j, double m) {
  const double k = j.value() - m;
  if (!std::isfinite(m) || m > j.value() + 1e-12 || m < -j.value() - 1e-12 || std::abs(k - std::round(k)) > 1e-12)
    throw DomainError("m = " + std::to_string(m) + " is not a valid projection for j = " + std::to_string(j.value()));
  std::vector<Complex> amps(j.dim());
  amps[static_cast<std::size_t>(std::lround(k))] = 1.0;
  return DickeState(j, std::move(amps));
}

DickeState make_css(SpinLength j, double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw DomainError("CSS angles must be finite");
  std::vector<Complex> amps(j.dim());
  amps[0] = 1.0;
  rotate_y_in_place(j, amps, theta);
  rotate_z_in_place(j, amps, phi);
  return DickeState(j, std::move(amps));
}

void rotate_z_in_place(SpinLength j, std::span<Complex> amps, double angle) {
  if (angle == 0.0) return;
  kernels::apply_phases(amps, j.value(), angle, 0.0);
}

void rotate_x_in_place(SpinLength j, std::span<Complex> amps, double angle) {
  if (angle == 0.0) return;
  const auto basis = detail::JxEigenbasis::get(j);
  std::vector<Complex> tmp(amps.size());
  basis->to_eigenbasis(amps, tmp);
  kernels::apply_phases(tmp, j.value(), angle, 0.0);
  basis->from_eigenbasis(tmp, amps);
}

void rotate_y_in_place(SpinLength j, std::span<Complex> amps, double angle) {
  if (angle == 0.0) return;
  // exp(-i a Jy) = Rz(pi/2) exp(-i a Jx) Rz(-pi/2).
  constexpr double half_pi = 0.5 * std::numbers::pi;
  rotate_z_in_place(j, amps, -half_pi);
  rotate_x_in_place(j, amps, angle);
  rotate_z_in_place(j, amps, half_pi);
}

void rotate_in_place(SpinLength j, std::span<Complex> amps, const RotationSpec& rot) {
  if (amps.size() != j.dim()) throw DomainError("rotation: dimension mismatch");
  const auto& n = rot.axis();
  const double a = rot.angle();
  if (n[1] == 0.0 && n[2] == 0.0) return rotate_x_in_place(j, amps, n[0] * a);
  if (n[0] == 0.0 && n[2] == 0.0) return rotate_y_in_place(j, amps, n[1] * a);
  if (n[0] == 0.0 && n[1] == 0.0) return rotate_z_in_place(j, amps, n[2] * a);
  // n = (sin t cos p, sin t sin p, cos t):  R_n(a) = Rz(p) Ry(t) Rz(a) Ry(-t) Rz(-p).
  const double theta = std::acos(std::clamp(n[2], -1.0, 1.0));
  const double phi = std::atan2(n[1], n[0]);
  rotate_z_in_place(j, amps, -phi);
  rotate_y_in_place(j, amps, -theta);
  rotate_z_in_place(j, amps, a);
  rotate_y_in_place(j, amps, theta);
  rotate_z_in_place(j, amps, phi);
}

DickeState rotate(const DickeState& state, const RotationSpec& rot) {
  std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
  rotate_in_place(state.spin(), amps, rot);
  return DickeState(state.spin(), std::move(amps));
}

}  // namespace squeeze
