#include "squeeze/banded.hpp"

#include <algorithm>
#include <cmath>

#include "squeeze/errors.hpp"
#include "squeeze/kernels.hpp"

namespace squeeze {

BandedHermitian BandedHermitian::from_quadratic(SpinLength j, const QuadraticForm& f) {
  const std::size_t n = j.dim();
  BandedHermitian h(n);
  const double jj = j.casimir();
  // Jx^2 = (J+^2 + J-^2 + 2(J^2 - Jz^2))/4,  Jy^2 = (-J+^2 - J-^2 + 2(J^2 - Jz^2))/4.
  for (std::size_t k = 0; k < n; ++k) {
    const double m = j.m_at(k);
    h.d0_[k] = f.zz * m * m + 0.5 * (f.xx + f.yy) * (jj - m * m) + f.constant;
  }
  for (std::size_t k = 0; k + 2 < n; ++k)
    h.d2_[k] = 0.25 * (f.xx - f.yy) * ladder_coefficient(j, k) * ladder_coefficient(j, k + 1);
  return h;
}

void BandedHermitian::add_linear(SpinLength j, const Vec3& c) {
  if (j.dim() != dim()) throw DomainError("add_linear: dimension mismatch");
  for (std::size_t k = 0; k < dim(); ++k) d0_[k] += c[2] * j.m_at(k);
  for (std::size_t k = 0; k + 1 < dim(); ++k) {
    const double b = 0.5 * ladder_coefficient(j, k);
    d1_[k] += Complex{c[0] * b, -c[1] * b};
  }
}

Complex BandedHermitian::entry(std::size_t row, std::size_t col) const {
  if (row == col) return d0_.at(row);
  if (col == row + 1) return d1_.at(row);
  if (row == col + 1) return std::conj(d1_.at(col));
  if (col == row + 2) return d2_.at(row);
  if (row == col + 2) return std::conj(d2_.at(col));
  return {};
}

void BandedHermitian::apply(std::span<const Complex> in, std::span<Complex> out) const {
  if (in.size() != dim() || out.size() != dim()) throw DomainError("banded apply: dimension mismatch");
  kernels::banded_hermitian_matvec(d0_, d1_, d2_, in, out);
}

std::pair<double, double> BandedHermitian::spectral_bounds() const {
  const std::size_t n = dim();
  double lo = 0.0, hi = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double r = 0.0;
    if (k + 1 < n) r += std::abs(d1_[k]);
    if (k >= 1) r += std::abs(d1_[k - 1]);
    if (k + 2 < n) r += std::abs(d2_[k]);
    if (k >= 2) r += std::abs(d2_[k - 2]);
    const double a = d0_[k] - r, b = d0_[k] + r;
    if (k == 0 || a < lo) lo = a;
    if (k == 0 || b > hi) hi = b;
  }
  return {lo, hi};
}

int expm_taylor_apply(const BandedHermitian& h, double lo, double hi, double tau, std::span<Complex> v,
                      double tolerance) {
  if (v.size() != h.dim()) throw DomainError("expm_taylor_apply: dimension mismatch");
  if (tau == 0.0) return 0;
  const double center = 0.5 * (lo + hi);
  const double radius = std::max(0.5 * (hi - lo), 1e-300);
  const double x_total = std::abs(tau) * radius;
  const int substeps = std::max(1, static_cast<int>(std::ceil(x_total)));
  const double ts = tau / substeps;
  const double x = std::abs(ts) * radius;

  // Smallest K with x^(K+1)/(K+1)! < tolerance; x <= 1 keeps the series well conditioned.
  int order = 0;
  double bound = 1.0;
  while (true) {
    bound *= x / (order + 1);
    if (bound < tolerance || order > 60) break;
    ++order;
  }
  ++order;

  const std::size_t n = v.size();
  std::vector<Complex> term(n), next(n), acc(n);
  const Complex shift_phase = std::polar(1.0, -ts * center);
  const Complex minus_i_ts{0.0, -ts};
  int products = 0;
  for (int s = 0; s < substeps; ++s) {
    std::copy(v.begin(), v.end(), term.begin());
    std::copy(v.begin(), v.end(), acc.begin());
    for (int k = 1; k <= order; ++k) {
      h.apply(term, next);
      ++products;
      const Complex factor = minus_i_ts / static_cast<double>(k);
      for (std::size_t r = 0; r < n; ++r) {
        term[r] = factor * (next[r] - center * term[r]);
        acc[r] += term[r];
      }
    }
    for (std::size_t r = 0; r < n; ++r) v[r] = shift_phase * acc[r];
  }
  return products;
}

}  // namespace squeeze
