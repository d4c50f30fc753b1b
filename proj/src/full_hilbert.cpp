#include "squeeze/full_hilbert.hpp"

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <string>

#include "squeeze/errors.hpp"

namespace squeeze::oracle {

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct Collective {
  Mat jx, jy, jz;
};

// Bit s of a basis index set means spin s points down.
Collective collective_ops(int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Collective c{Mat::Zero(dim, dim), Mat::Zero(dim, dim), Mat::Zero(dim, dim)};
  const Complex i{0.0, 1.0};
  for (Eigen::Index s = 0; s < dim; ++s) {
    for (int q = 0; q < n; ++q) {
      const Eigen::Index flipped = s ^ (Eigen::Index{1} << q);
      const bool down = (s >> q) & 1;
      c.jz(s, s) += down ? -0.5 : 0.5;
      c.jx(flipped, s) += 0.5;
      // sigma_y |up> = i |down>, sigma_y |down> = -i |up>
      c.jy(flipped, s) += down ? -0.5 * i : 0.5 * i;
    }
  }
  return c;
}

double binomial(int n, int k) { return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0))); }

Mat expm_hermitian(const Mat& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<Complex>() * Complex{0.0, -t}).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// v <- exp(-i k) v by Taylor series; k is assumed to have small norm.
void apply_exp_taylor(const Mat& k, Vec& v) {
  const double norm = k.cwiseAbs().colwise().sum().maxCoeff();
  const int sub = std::max(1, static_cast<int>(std::ceil(norm / 0.5)));
  const Mat ks = k / static_cast<double>(sub);
  for (int s = 0; s < sub; ++s) {
    Vec term = v;
    Vec sum = v;
    for (int order = 1; order < 40; ++order) {
      term = (ks * term) * Complex{0.0, -1.0 / order};
      sum += term;
      if (term.norm() < 1e-17) break;
    }
    v = sum;
  }
}

}  // namespace

Result full_hilbert_evolve(const DickeState& initial, std::span<const Step> steps) {
  const int n = static_cast<int>(initial.spin().particles());
  if (n > kMaxParticles)
    throw ResourceError("full-Hilbert oracle limited to " + std::to_string(kMaxParticles) + " particles");
  const Eigen::Index dim = Eigen::Index{1} << n;
  const auto ops = collective_ops(n);

  Vec psi(dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    const int k = std::popcount(static_cast<unsigned long>(s));
    psi(s) = initial[k] / std::sqrt(binomial(n, k));
  }

  const Mat jz2 = ops.jz * ops.jz;
  for (const auto& step : steps) {
    if (const auto* st = std::get_if<StaticEvolution>(&step)) {
      const Mat h = st->form.zz * jz2 + st->form.xx * ops.jx * ops.jx + st->form.yy * ops.jy * ops.jy +
                    st->form.constant * Mat::Identity(dim, dim) + st->linear[0] * ops.jx + st->linear[1] * ops.jy +
                    st->linear[2] * ops.jz;
      psi = expm_hermitian(h, st->duration) * psi;
    } else if (const auto* rs = std::get_if<RotationStep>(&step)) {
      const auto& a = rs->rotation.axis();
      const Mat g = a[0] * ops.jx + a[1] * ops.jy + a[2] * ops.jz;
      psi = expm_hermitian(g, rs->rotation.angle()) * psi;
    } else {
      const auto& d = std::get<DrivenEvolution>(step);
      if (d.t1 < d.t0) throw DomainError("driven oracle step runs backwards");
      const Mat hz = d.chi * jz2;
      const Mat comm = d.chi * (jz2 * ops.jy - ops.jy * jz2);  // chi [Jz^2, Jy]
      const double period = d.drive.period();
      const int count = std::max(1, static_cast<int>(std::ceil((d.t1 - d.t0) / period * d.steps - 1e-9)));
      const double h = (d.t1 - d.t0) / count;
      const double c = std::sqrt(3.0) / 6.0;
      for (int k = 0; k < count; ++k) {
        const double t = d.t0 + k * h;
        const double f1 = drive_value(d.drive, t + (0.5 - c) * h);
        const double f2 = drive_value(d.drive, t + (0.5 + c) * h);
        // K = h/2 (H1 + H2) - i sqrt(3)/12 h^2 [H2, H1],  [H2, H1] = chi (f1 - f2) [Jz^2, Jy]
        const Mat kgen = h * hz + 0.5 * h * (f1 + f2) * ops.jy -
                         Complex{0.0, std::sqrt(3.0) / 12.0 * h * h * (f1 - f2)} * comm;
        apply_exp_taylor(kgen, psi);
      }
    }
  }

  std::vector<Complex> amps(static_cast<std::size_t>(n) + 1, Complex{});
  for (Eigen::Index s = 0; s < dim; ++s) {
    const int k = std::popcount(static_cast<unsigned long>(s));
    amps[k] += psi(s) / std::sqrt(binomial(n, k));
  }
  double kept = 0.0;
  for (const auto& a : amps) kept += std::norm(a);
  const double deficit = 1.0 - kept / psi.squaredNorm();
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& a : amps) a *= scale;
  return {DickeState(initial.spin(), std::move(amps)), deficit};
}

Result full_hilbert_oracle(int particles, const HamiltonianSpec& spec, const DickeState& initial, double duration) {
  if (particles > kMaxParticles)
    throw ResourceError("full-Hilbert oracle limited to " + std::to_string(kMaxParticles) + " particles");
  if (static_cast<int>(initial.spin().particles()) != particles)
    throw DomainError("initial state does not match particle count");
  spec.validate();
  std::vector<Step> steps;
  if (const auto* d = std::get_if<form::Driven>(&spec.form))
    steps.push_back(DrivenEvolution{spec.chi, d->drive, 0.0, duration});
  else
    steps.push_back(StaticEvolution{quadratic_form(spec), {}, duration});
  return full_hilbert_evolve(initial, steps);
}

std::vector<Step> steps_from_schedule(const ProtocolSchedule& schedule) {
  std::vector<Step> out;
  for (const auto& seg : schedule.segments()) {
    if (const auto* q = std::get_if<QuadraticSegment>(&seg)) {
      QuadraticForm f;
      (q->axis == Axis::X ? f.xx : q->axis == Axis::Y ? f.yy : f.zz) = q->chi;
      out.push_back(StaticEvolution{f, {}, q->duration});
    } else if (const auto* d = std::get_if<DrivenSegment>(&seg)) {
      out.push_back(DrivenEvolution{d->chi, d->drive, d->t0, d->t1});
    } else if (const auto* p = std::get_if<Pulse>(&seg)) {
      out.push_back(RotationStep{p->rotation.scaled(p->area_scale)});
    }
  }
  return out;
}

}  // namespace squeeze::oracle
