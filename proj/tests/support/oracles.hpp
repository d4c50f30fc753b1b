#pragma once

// Independent reference computations for the tests: dense matrices built
// straight from the angular-momentum formulas, Pade matrix exponentials, and
// special functions from their power series.

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "squeeze/spin.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Complex = std::complex<double>;

struct DenseSpin {
  Mat jx, jy, jz;
};

/// Jz = diag(m), J+ |m> = sqrt((j - m)(j + m + 1)) |m+1>, in the descending-m basis.
DenseSpin dense_spin(double j);

/// exp(-i t H) by scaling-and-squaring Pade (Eigen MatrixFunctions).
Mat expm(const Mat& h, double t);

Vec to_vec(const squeeze::DickeState& s);
squeeze::DickeState to_state(squeeze::SpinLength j, const Vec& v);

/// |<a|b>|.
double fidelity(const Vec& a, const Vec& b);

/// Kitagawa-Ueda parameter from dense covariance: the smaller eigenvalue of
/// the 2x2 perpendicular covariance matrix, times 4/N.
double xi2_dense(double j, const Vec& psi);

/// sum_k (-1)^k (x/2)^(2k) / (k!)^2 in long double.
double bessel_j0_series(double x);
/// Root of bessel_j0_series in [lo, hi] by bisection.
double bisect_j0(double lo, double hi);

/// cos(theta/2)^(2j) style closed form of |j,j> rotated to (theta, phi):
/// amplitudes sqrt(C(2j,k)) cos^(2j-k)(theta/2) sin^k(theta/2) e^{-i phi m}.
Vec css_closed_form(double j, double theta, double phi);

}  // namespace oracle
