#pragma once

#include <span>
#include <vector>

#include "squeeze/spin.hpp"

namespace squeeze {

/// Quadratic collective-spin generator
///   zz Jz^2 + xx Jx^2 + yy Jy^2 + constant * 1.
struct QuadraticForm {
  double zz = 0.0;
  double xx = 0.0;
  double yy = 0.0;
  double constant = 0.0;
};

/// Hermitian matrix with bandwidth <= 2 in the Dicke basis. Only the main
/// diagonal and the superdiagonals are stored; the rest follows by conjugation.
class BandedHermitian {
 public:
  explicit BandedHermitian(std::size_t dim) : d0_(dim, 0.0), d1_(dim > 0 ? dim - 1 : 0), d2_(dim > 1 ? dim - 2 : 0) {}

  static BandedHermitian from_quadratic(SpinLength j, const QuadraticForm& form);

  std::size_t dim() const noexcept { return d0_.size(); }
  std::span<const double> d0() const noexcept { return d0_; }
  std::span<const Complex> d1() const noexcept { return d1_; }
  std::span<const Complex> d2() const noexcept { return d2_; }
  std::span<double> d0() noexcept { return d0_; }
  std::span<Complex> d1() noexcept { return d1_; }
  std::span<Complex> d2() noexcept { return d2_; }

  /// Adds cx Jx + cy Jy + cz Jz.
  void add_linear(SpinLength j, const Vec3& coeffs);

  Complex entry(std::size_t row, std::size_t col) const;
  void apply(std::span<const Complex> in, std::span<Complex> out) const;

  /// Gershgorin bounds on the spectrum.
  std::pair<double, double> spectral_bounds() const;

 private:
  std::vector<double> d0_;
  std::vector<Complex> d1_;
  std::vector<Complex> d2_;
};

/// v <- exp(-i tau H) v by a truncated Taylor series of the shifted generator,
/// sub-stepped so each step has ||tau_s (H - c)|| <= 1, and truncated once the
/// tail bound x^(K+1)/(K+1)! drops below `tolerance`. The spectrum of H must lie
/// in [lo, hi]. Returns the number of matrix-vector products used.
int expm_taylor_apply(const BandedHermitian& h, double lo, double hi, double tau, std::span<Complex> v,
                      double tolerance = 1e-15);

}  // namespace squeeze
