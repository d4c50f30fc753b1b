#include "squeeze/spin_basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "squeeze/kernels.hpp"
#include "squeeze/tridiagonal.hpp"

namespace squeeze::detail {

namespace {

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<int, std::shared_ptr<const JxEigenbasis>>& cache() {
  static std::map<int, std::shared_ptr<const JxEigenbasis>> c;
  return c;
}

}  // namespace

std::shared_ptr<const JxEigenbasis> JxEigenbasis::get(SpinLength j) {
  {
    std::lock_guard lock(cache_mutex());
    auto it = cache().find(j.twice());
    if (it != cache().end()) return it->second;
  }
  // Built outside the lock; a concurrent duplicate build is harmless.
  auto basis = std::make_shared<const JxEigenbasis>(j);
  std::lock_guard lock(cache_mutex());
  return cache().emplace(j.twice(), std::move(basis)).first->second;
}

void JxEigenbasis::clear_cache() {
  std::lock_guard lock(cache_mutex());
  cache().clear();
}

JxEigenbasis::JxEigenbasis(SpinLength j) : j_(j), n_(j.dim()), v_(n_ * n_), vt_(n_ * n_) {
  const std::size_t n = n_;
  std::vector<double> d(n, 0.0);
  std::vector<double> e(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) e[k] = 0.5 * ladder_coefficient(j, k);
  const auto eig = tridiagonal_eigen(d, e);
  const auto& w = eig.values;
  const auto& z = eig.vectors;  // column-major

  // LAPACK orders eigenvalues ascending; we want mu_k = j - k descending.
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = n - 1 - k;
    const double mu = j.m_at(k);
    if (std::abs(w[src] - mu) > 1e-8 * std::max(1.0, j.value()))
      throw std::runtime_error("Jx eigenvalue mismatch at k=" + std::to_string(k));
    for (std::size_t r = 0; r < n; ++r) v_[r * n + k] = z[src * n + r];
  }

  // Fix relative column signs: <v_k|Jz|v_{k+1}> must equal -(Jx)_{k,k+1}.
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += j.m_at(r) * v_[r * n + k] * v_[r * n + k + 1];
    const double target = 0.5 * ladder_coefficient(j, k);
    if (std::abs(std::abs(s) - target) > 1e-8 * std::max(1.0, j.value()))
      throw std::runtime_error("Jx eigenbasis is not tridiagonal in Jz at k=" + std::to_string(k));
    if (s > 0.0)
      for (std::size_t r = 0; r < n; ++r) v_[r * n + k + 1] = -v_[r * n + k + 1];
  }

  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) vt_[c * n + r] = v_[r * n + c];
}

void JxEigenbasis::to_eigenbasis(std::span<const Complex> in, std::span<Complex> out) const {
  kernels::real_matvec(vt_, n_, in, out);
}

void JxEigenbasis::from_eigenbasis(std::span<const Complex> in, std::span<Complex> out) const {
  kernels::real_matvec(v_, n_, in, out);
}

}  // namespace squeeze::detail
