#pragma once

#include <memory>
#include <span>
#include <vector>

#include "squeeze/spin.hpp"

namespace squeeze::detail {

// Eigenbasis of Jx for one spin length. Column k of V is the eigenvector with
// eigenvalue mu_k = j - k; column signs are fixed so that V^T Jz V = -Jx
// (standard tridiagonal form). Equivalently V = +-exp(-i pi/2 Jy).
class JxEigenbasis {
 public:
  /// Cached per spin length; safe to call from several threads.
  static std::shared_ptr<const JxEigenbasis> get(SpinLength j);
  static void clear_cache();

  explicit JxEigenbasis(SpinLength j);

  SpinLength spin() const noexcept { return j_; }
  std::size_t dim() const noexcept { return n_; }
  /// Row-major V.
  std::span<const double> vectors() const noexcept { return v_; }

  /// out = V^T in.
  void to_eigenbasis(std::span<const Complex> in, std::span<Complex> out) const;
  /// out = V in.
  void from_eigenbasis(std::span<const Complex> in, std::span<Complex> out) const;

 private:
  SpinLength j_;
  std::size_t n_;
  std::vector<double> v_;
  std::vector<double> vt_;
};

}  // namespace squeeze::detail
