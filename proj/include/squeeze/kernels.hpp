#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version (used by the
// library) and a plain serial reference in kernels::serial that the tests and
// the benchmark compare against.

#include <complex>
#include <cstddef>
#include <span>

namespace squeeze::kernels {

using Complex = std::complex<double>;

/// out = M in, M real row-major n x n. `in` and `out` must not alias.
void real_matvec(std::span<const double> m, std::size_t n, std::span<const Complex> in,
                 std::span<Complex> out);

/// out = H in for a Hermitian matrix given by its diagonal d0 (real) and its
/// first two superdiagonals d1, d2 (entries (k,k+1), (k,k+2)); either may be empty.
void banded_hermitian_matvec(std::span<const double> d0, std::span<const Complex> d1,
                             std::span<const Complex> d2, std::span<const Complex> in,
                             std::span<Complex> out);

/// amps[k] *= exp(-i (a m_k + b m_k^2)) with m_k = m0 - k.
void apply_phases(std::span<Complex> amps, double m0, double a, double b);

double norm_squared(std::span<const Complex> v);

namespace serial {
void real_matvec(std::span<const double> m, std::size_t n, std::span<const Complex> in,
                 std::span<Complex> out);
void banded_hermitian_matvec(std::span<const double> d0, std::span<const Complex> d1,
                             std::span<const Complex> d2, std::span<const Complex> in,
                             std::span<Complex> out);
void apply_phases(std::span<Complex> amps, double m0, double a, double b);
double norm_squared(std::span<const Complex> v);
}  // namespace serial

/// Number of OpenMP threads in use; honours SQUEEZE_THREADS when set.
int configure_threads();

}  // namespace squeeze::kernels
