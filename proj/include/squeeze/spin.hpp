#pragma once

// Collective spin of N exchange-symmetric spin-1/2 particles, represented in
// the Dicke basis |j,m>, m = j, j-1, ..., -j (index k <-> m = j - k).

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace squeeze {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double kNormTolerance = 1e-10;

/// Spin length j, stored exactly as the integer 2j (= particle count N).
class SpinLength {
 public:
  static SpinLength from_particles(int n);
  static SpinLength from_twice(int two_j) { return from_particles(two_j); }
  /// Accepts only positive half-integers.
  static SpinLength from_value(double j);

  int twice() const noexcept { return two_j_; }
  int particles() const noexcept { return two_j_; }
  double value() const noexcept { return 0.5 * two_j_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(two_j_) + 1; }
  double m_at(std::size_t k) const noexcept { return value() - static_cast<double>(k); }
  double casimir() const noexcept { return value() * (value() + 1.0); }

  friend bool operator==(SpinLength, SpinLength) = default;

 private:
  explicit SpinLength(int two_j) : two_j_(two_j) {}
  int two_j_;
};

/// <m_k| J+ |m_{k+1}> = sqrt(j(j+1) - m_k m_{k+1}); the only nonzero ladder element.
double ladder_coefficient(SpinLength j, std::size_t k);

/// Normalized pure state in the symmetric subspace. Immutable.
class DickeState {
 public:
  /// Throws DomainError on length mismatch or if the norm deviates from 1 by
  /// more than kNormTolerance.
  DickeState(SpinLength j, std::vector<Complex> amplitudes);

  SpinLength spin() const noexcept { return j_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t k) const { return amps_[k]; }
  double norm_squared() const;

 private:
  SpinLength j_;
  std::vector<Complex> amps_;
};

Complex overlap(const DickeState& bra, const DickeState& ket);
/// Phase-insensitive fidelity |<a|b>|.
double fidelity(const DickeState& a, const DickeState& b);

enum class SpinComponent { Jx, Jy, Jz, Jplus, Jminus };

/// Tridiagonal (at most) matrix of a collective spin component.
class SpinOperator {
 public:
  static SpinOperator make(SpinLength j, SpinComponent kind);

  SpinLength spin() const noexcept { return j_; }
  SpinComponent kind() const noexcept { return kind_; }
  bool hermitian() const noexcept {
    return kind_ == SpinComponent::Jx || kind_ == SpinComponent::Jy || kind_ == SpinComponent::Jz;
  }
  std::span<const Complex> diagonal() const noexcept { return diag_; }
  /// Entries (k, k+1).
  std::span<const Complex> upper() const noexcept { return upper_; }
  /// Entries (k+1, k).
  std::span<const Complex> lower() const noexcept { return lower_; }

  Complex entry(std::size_t row, std::size_t col) const;
  std::vector<Complex> apply(std::span<const Complex> v) const;

 private:
  SpinOperator(SpinLength j, SpinComponent kind);
  SpinLength j_;
  SpinComponent kind_;
  std::vector<Complex> diag_, upper_, lower_;
};

/// <A> for a Hermitian component. Throws DomainError for J+/J- or a spin mismatch.
double expectation(const DickeState& state, const SpinOperator& op);
/// <A B>.
Complex pair_moment(const DickeState& state, const SpinOperator& a, const SpinOperator& b);

/// exp(-i angle (axis . J)).
class RotationSpec {
 public:
  /// Throws DomainError unless |axis| = 1 within 1e-12 and angle is finite.
  RotationSpec(Vec3 axis, double angle);

  static RotationSpec about_x(double angle) { return {{1.0, 0.0, 0.0}, angle}; }
  static RotationSpec about_y(double angle) { return {{0.0, 1.0, 0.0}, angle}; }
  static RotationSpec about_z(double angle) { return {{0.0, 0.0, 1.0}, angle}; }

  const Vec3& axis() const noexcept { return axis_; }
  double angle() const noexcept { return angle_; }
  RotationSpec scaled(double factor) const { return {axis_, angle_ * factor}; }
  /// Same unitary written with the opposite angle sign.
  RotationSpec inverse() const { return {axis_, -angle_}; }

  /// Classical SO(3) action on a vector (right-hand rule).
  Vec3 apply_classical(const Vec3& v) const;

 private:
  Vec3 axis_;
  double angle_;
};

/// |j,m>. Throws DomainError unless -j <= m <= j and j - m is an integer.
DickeState make_dicke_state(SpinLength j, double m);

/// Coherent state along (theta, phi), defined as R_z(phi) R_y(theta) |j,j>.
DickeState make_css(SpinLength j, double theta, double phi);

DickeState rotate(const DickeState& state, const RotationSpec& rot);

// In-place variants on raw amplitude buffers; used by the propagators.
void rotate_in_place(SpinLength j, std::span<Complex> amps, const RotationSpec& rot);
void rotate_z_in_place(SpinLength j, std::span<Complex> amps, double angle);
void rotate_x_in_place(SpinLength j, std::span<Complex> amps, double angle);
void rotate_y_in_place(SpinLength j, std::span<Complex> amps, double angle);

}  // namespace squeeze
