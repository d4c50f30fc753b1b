#include "doctest.h"

#include <random>
#include <vector>

#include "squeeze/diagnostics.hpp"
#include "squeeze/kernels.hpp"
#include "squeeze/spin.hpp"

using namespace squeeze;

namespace {

std::vector<Complex> noise(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (auto& c : v) c = {g(rng), g(rng)};
  return v;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

// Sizes straddle the parallel threshold.
TEST_CASE("parallel kernels reproduce the serial references") {
  for (std::size_t n : {3u, 100u, 257u, 1251u}) {
    CAPTURE(n);
    std::vector<double> m(n * n);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (auto& x : m) x = u(rng);
    const auto in = noise(n, 1);
    std::vector<Complex> a(n), b(n);
    kernels::real_matvec(m, n, in, a);
    kernels::serial::real_matvec(m, n, in, b);
    CHECK(max_diff(a, b) < 1e-12 * n);

    std::vector<double> d0(n);
    for (auto& x : d0) x = u(rng);
    const auto d1 = noise(n - 1, 2);
    const auto d2 = noise(n > 1 ? n - 2 : 0, 3);
    kernels::banded_hermitian_matvec(d0, d1, d2, in, a);
    kernels::serial::banded_hermitian_matvec(d0, d1, d2, in, b);
    CHECK(max_diff(a, b) < 1e-14);

    auto pa = in, pb = in;
    kernels::apply_phases(pa, 0.5 * (n - 1), 0.3, 1e-3);
    kernels::serial::apply_phases(pb, 0.5 * (n - 1), 0.3, 1e-3);
    CHECK(max_diff(pa, pb) < 1e-15);

    // vectorized reduction reorders the sum
    CHECK(kernels::norm_squared(in) == doctest::Approx(kernels::serial::norm_squared(in)).epsilon(1e-14).scale(0));
  }
}

TEST_CASE("banded matvec fills the lower triangle by conjugation") {
  const std::vector<double> d0{1.0, 2.0, 3.0};
  const std::vector<Complex> d1{{0.0, 1.0}, {2.0, 0.5}};
  const std::vector<Complex> d2{{0.25, -1.0}};
  // column 0 of H: (1, -i, 0.25 + i)
  std::vector<Complex> e0{1.0, 0.0, 0.0}, out(3);
  kernels::banded_hermitian_matvec(d0, d1, d2, e0, out);
  CHECK(std::abs(out[0] - Complex(1.0, 0.0)) == 0.0);
  CHECK(std::abs(out[1] - Complex(0.0, -1.0)) == 0.0);
  CHECK(std::abs(out[2] - Complex(0.25, 1.0)) == 0.0);
}

TEST_CASE("Husimi grid: parallel rows equal serial rows") {
  const auto s = make_css(SpinLength::from_particles(40), 0.9, 1.7);
  const auto a = husimi_q(s, 16, 32);
  const auto b = serial::husimi_q(s, 16, 32);
  REQUIRE(a.q.size() == b.q.size());
  for (std::size_t i = 0; i < a.q.size(); ++i) CHECK(a.q[i] == b.q[i]);
}

TEST_CASE("thread configuration honours SQUEEZE_THREADS") {
  setenv("SQUEEZE_THREADS", "1", 1);
  CHECK(kernels::configure_threads() == 1);
  unsetenv("SQUEEZE_THREADS");
  CHECK(kernels::configure_threads() >= 1);
}
