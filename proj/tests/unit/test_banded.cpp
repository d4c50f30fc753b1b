#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "squeeze/banded.hpp"
#include "squeeze/errors.hpp"

using namespace squeeze;

namespace {

oracle::Mat dense_of(const BandedHermitian& h) {
  const auto n = static_cast<Eigen::Index>(h.dim());
  oracle::Mat m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = h.entry(r, c);
  return m;
}

}  // namespace

TEST_CASE("quadratic forms match dense J products") {
  for (double jv : {0.5, 1.0, 2.5, 8.0}) {
    const auto j = SpinLength::from_value(jv);
    const auto d = oracle::dense_spin(jv);
    const QuadraticForm f{.zz = 0.7, .xx = -1.3, .yy = 0.4, .constant = 0.25};
    const oracle::Mat ref = 0.7 * d.jz * d.jz - 1.3 * d.jx * d.jx + 0.4 * d.jy * d.jy +
                            0.25 * oracle::Mat::Identity(d.jz.rows(), d.jz.cols());
    CHECK((dense_of(BandedHermitian::from_quadratic(j, f)) - ref).norm() < 1e-12);
  }
}

TEST_CASE("linear terms") {
  const auto j = SpinLength::from_particles(7);
  const auto d = oracle::dense_spin(3.5);
  BandedHermitian h(j.dim());
  h.add_linear(j, {0.3, -0.8, 1.1});
  const oracle::Mat ref = 0.3 * d.jx - 0.8 * d.jy + 1.1 * d.jz;
  CHECK((dense_of(h) - ref).norm() < 1e-12);
  CHECK_THROWS_AS(h.add_linear(SpinLength::from_particles(6), {1, 0, 0}), DomainError);
}

TEST_CASE("Gershgorin bounds contain the spectrum") {
  const auto j = SpinLength::from_particles(20);
  auto h = BandedHermitian::from_quadratic(j, {.zz = 1.0, .yy = -1.0});
  h.add_linear(j, {0.0, 2.0, 0.0});
  const auto [lo, hi] = h.spectral_bounds();
  Eigen::SelfAdjointEigenSolver<oracle::Mat> es(dense_of(h));
  CHECK(es.eigenvalues().minCoeff() >= lo - 1e-9);
  CHECK(es.eigenvalues().maxCoeff() <= hi + 1e-9);
}

TEST_CASE("Taylor exponential matches the dense exponential") {
  const auto j = SpinLength::from_particles(30);
  auto h = BandedHermitian::from_quadratic(j, {.zz = 0.5, .xx = 1.0});
  h.add_linear(j, {0.0, 3.0, 0.0});
  const auto [lo, hi] = h.spectral_bounds();
  for (double tau : {1e-4, 0.01, 0.3}) {
    auto v = make_css(j, 1.0, 0.5);
    std::vector<Complex> amps(v.amplitudes().begin(), v.amplitudes().end());
    const int mv = expm_taylor_apply(h, lo, hi, tau, amps);
    CHECK(mv > 0);
    const oracle::Vec ref = oracle::expm(dense_of(h), tau) * oracle::to_vec(v);
    oracle::Vec got(amps.size());
    for (std::size_t k = 0; k < amps.size(); ++k) got(k) = amps[k];
    CHECK((ref - got).norm() < 1e-11);
  }
}

TEST_CASE("Taylor exponential preserves the norm over many steps") {
  const auto j = SpinLength::from_particles(200);
  const auto h = BandedHermitian::from_quadratic(j, {.xx = 1.0});
  const auto [lo, hi] = h.spectral_bounds();
  auto s = make_css(j, 0.4, 0.0);
  std::vector<Complex> amps(s.amplitudes().begin(), s.amplitudes().end());
  for (int i = 0; i < 2000; ++i) expm_taylor_apply(h, lo, hi, 1e-5, amps);
  double n2 = 0.0;
  for (auto& c : amps) n2 += std::norm(c);
  CHECK(std::abs(n2 - 1.0) < 1e-11);
}
