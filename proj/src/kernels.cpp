#include "squeeze/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

namespace squeeze::kernels {

namespace {

// Below this size the fork/join overhead dominates.
constexpr std::size_t kParallelThreshold = 256;

}  // namespace

void real_matvec(std::span<const double> m, std::size_t n, std::span<const Complex> in,
                 std::span<Complex> out) {
  std::vector<double> re(n), im(n);
  for (std::size_t k = 0; k < n; ++k) {
    re[k] = in[k].real();
    im[k] = in[k].imag();
  }
  const double* a = m.data();
  const double* pr = re.data();
  const double* pi = im.data();
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const double* row = a + static_cast<std::size_t>(r) * n;
    double sr = 0.0, si = 0.0;
#pragma omp simd reduction(+ : sr, si)
    for (std::size_t c = 0; c < n; ++c) {
      sr += row[c] * pr[c];
      si += row[c] * pi[c];
    }
    out[static_cast<std::size_t>(r)] = {sr, si};
  }
}

void banded_hermitian_matvec(std::span<const double> d0, std::span<const Complex> d1,
                             std::span<const Complex> d2, std::span<const Complex> in,
                             std::span<Complex> out) {
  const std::size_t n = in.size();
  const auto rows = static_cast<std::ptrdiff_t>(n);
  const bool has1 = !d1.empty();
  const bool has2 = !d2.empty();
#pragma omp parallel for schedule(static) if (n >= 4 * kParallelThreshold)
  for (std::ptrdiff_t rr = 0; rr < rows; ++rr) {
    const auto r = static_cast<std::size_t>(rr);
    Complex s = d0.empty() ? Complex{} : d0[r] * in[r];
    if (has1) {
      if (r + 1 < n) s += d1[r] * in[r + 1];
      if (r >= 1) s += std::conj(d1[r - 1]) * in[r - 1];
    }
    if (has2) {
      if (r + 2 < n) s += d2[r] * in[r + 2];
      if (r >= 2) s += std::conj(d2[r - 2]) * in[r - 2];
    }
    out[r] = s;
  }
}

void apply_phases(std::span<Complex> amps, double m0, double a, double b) {
  const auto n = static_cast<std::ptrdiff_t>(amps.size());
#pragma omp parallel for schedule(static) if (amps.size() >= 4 * kParallelThreshold)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const double m = m0 - static_cast<double>(k);
    amps[static_cast<std::size_t>(k)] *= std::polar(1.0, -(a * m + b * m * m));
  }
}

// Kept sequential: a parallel reduction would make the summation order, and
// hence renormalized outputs, depend on the thread count.
double norm_squared(std::span<const Complex> v) {
  double s = 0.0;
#pragma omp simd reduction(+ : s)
  for (std::size_t k = 0; k < v.size(); ++k) s += std::norm(v[k]);
  return s;
}

int configure_threads() {
  if (const char* env = std::getenv("SQUEEZE_THREADS")) {
    const int requested = std::atoi(env);
    if (requested > 0) omp_set_num_threads(requested);
  }
  return omp_get_max_threads();
}

namespace serial {

void real_matvec(std::span<const double> m, std::size_t n, std::span<const Complex> in,
                 std::span<Complex> out) {
  for (std::size_t r = 0; r < n; ++r) {
    Complex s{};
    for (std::size_t c = 0; c < n; ++c) s += m[r * n + c] * in[c];
    out[r] = s;
  }
}

void banded_hermitian_matvec(std::span<const double> d0, std::span<const Complex> d1,
                             std::span<const Complex> d2, std::span<const Complex> in,
                             std::span<Complex> out) {
  const std::size_t n = in.size();
  for (std::size_t r = 0; r < n; ++r) out[r] = d0.empty() ? Complex{} : d0[r] * in[r];
  for (std::size_t r = 0; r + 1 < n && !d1.empty(); ++r) {
    out[r] += d1[r] * in[r + 1];
    out[r + 1] += std::conj(d1[r]) * in[r];
  }
  for (std::size_t r = 0; r + 2 < n && !d2.empty(); ++r) {
    out[r] += d2[r] * in[r + 2];
    out[r + 2] += std::conj(d2[r]) * in[r];
  }
}

void apply_phases(std::span<Complex> amps, double m0, double a, double b) {
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double m = m0 - static_cast<double>(k);
    amps[k] *= std::exp(Complex{0.0, -(a * m + b * m * m)});
  }
}

double norm_squared(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& c : v) s += std::norm(c);
  return s;
}

}  // namespace serial
}  // namespace squeeze::kernels
