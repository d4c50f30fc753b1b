#include "oracles.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace oracle {

DenseSpin dense_spin(double j) {
  const auto n = static_cast<Eigen::Index>(std::lround(2 * j)) + 1;
  Mat jz = Mat::Zero(n, n), jp = Mat::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const double m = j - static_cast<double>(r);
    jz(r, r) = m;
    // row r-1 holds m+1
    if (r > 0) jp(r - 1, r) = std::sqrt((j - m) * (j + m + 1.0));
  }
  const Mat jm = jp.adjoint();
  return {0.5 * (jp + jm), Complex(0.0, -0.5) * (jp - jm), jz};
}

Mat expm(const Mat& h, double t) {
  const Mat a = Complex(0.0, -t) * h;
  return a.exp();
}

Vec to_vec(const squeeze::DickeState& s) {
  Vec v(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t k = 0; k < s.dim(); ++k) v(static_cast<Eigen::Index>(k)) = s[k];
  return v;
}

squeeze::DickeState to_state(squeeze::SpinLength j, const Vec& v) {
  std::vector<Complex> a(v.data(), v.data() + v.size());
  return {j, std::move(a)};
}

double fidelity(const Vec& a, const Vec& b) { return std::abs(a.dot(b)); }

double xi2_dense(double j, const Vec& psi) {
  const auto s = dense_spin(j);
  const Mat* ops[3] = {&s.jx, &s.jy, &s.jz};
  Eigen::Vector3d mean;
  for (int a = 0; a < 3; ++a) mean(a) = psi.dot(*ops[a] * psi).real();
  const Eigen::Vector3d n = mean.normalized();
  // any orthonormal pair perpendicular to n
  Eigen::Vector3d t = std::abs(n(0)) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  const Eigen::Vector3d e1 = (t - t.dot(n) * n).normalized();
  const Eigen::Vector3d e2 = n.cross(e1);
  auto along = [&](const Eigen::Vector3d& e) { return Mat(e(0) * s.jx + e(1) * s.jy + e(2) * s.jz); };
  const Mat j1 = along(e1), j2 = along(e2);
  Eigen::Matrix2d c;
  c(0, 0) = psi.dot(j1 * j1 * psi).real();
  c(1, 1) = psi.dot(j2 * j2 * psi).real();
  c(0, 1) = c(1, 0) = 0.5 * psi.dot((j1 * j2 + j2 * j1) * psi).real();
  const double var_min = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(c).eigenvalues()(0);
  return 4.0 * var_min / (2.0 * j);
}

double bessel_j0_series(double x) {
  long double term = 1.0L, sum = 1.0L;
  const long double q = -0.25L * x * x;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-30L) break;
  }
  return static_cast<double>(sum);
}

double bisect_j0(double lo, double hi) {
  double flo = bessel_j0_series(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = bessel_j0_series(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Vec css_closed_form(double j, double theta, double phi) {
  const int n = static_cast<int>(std::lround(2 * j));
  Vec v(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double m = j - k;
    const double logc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    const double mag = std::exp(0.5 * logc) * std::pow(c, n - k) * std::pow(s, k);
    v(k) = mag * std::polar(1.0, -phi * m);
  }
  return v;
}

}  // namespace oracle
