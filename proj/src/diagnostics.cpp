#include "squeeze/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "squeeze/errors.hpp"

namespace squeeze {

SpinMoments spin_moments(SpinLength j, std::span<const Complex> psi) {
  if (psi.size() != j.dim()) throw DomainError("spin_moments: dimension mismatch");
  const std::size_t n = psi.size();
  double jz = 0.0, jz2 = 0.0;
  Complex p1{}, p2{}, q{};
  for (std::size_t k = 0; k < n; ++k) {
    const double m = j.m_at(k);
    const double p = std::norm(psi[k]);
    jz += m * p;
    jz2 += m * m * p;
    if (k + 1 < n) {
      const double b = ladder_coefficient(j, k);
      const Complex c = std::conj(psi[k]) * psi[k + 1] * b;
      p1 += c;
      q += c * (m + j.m_at(k + 1));
      if (k + 2 < n) p2 += std::conj(psi[k]) * psi[k + 2] * (b * ladder_coefficient(j, k + 1));
    }
  }
  const double t = j.casimir() - jz2;
  SpinMoments out;
  out.mean = {p1.real(), p1.imag(), jz};
  auto& s = out.second;
  s[0][0] = 0.5 * (p2.real() + t);
  s[1][1] = 0.5 * (t - p2.real());
  s[2][2] = jz2;
  s[0][1] = s[1][0] = 0.5 * p2.imag();
  s[0][2] = s[2][0] = 0.5 * q.real();
  s[1][2] = s[2][1] = 0.5 * q.imag();
  return out;
}

SpinMoments spin_moments(const DickeState& state) { return spin_moments(state.spin(), state.amplitudes()); }

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

double quad(const std::array<Vec3, 3>& c, const Vec3& u, const Vec3& v) {
  double s = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) s += u[a] * c[a][b] * v[b];
  return s;
}

}  // namespace

std::array<Vec3, 2> perpendicular_frame(const Vec3& n) {
  const Vec3 z{0.0, 0.0, 1.0};
  Vec3 n1 = cross(z, n);
  const double len = norm(n1);
  if (len < 1e-6) {
    n1 = {1.0, 0.0, 0.0};
  } else {
    for (auto& c : n1) c /= len;
  }
  return {n1, cross(n, n1)};
}

SqueezingReport squeezing_report(SpinLength j, const SpinMoments& mo) {
  const double len = norm(mo.mean);
  if (!(len > 1e-9 * j.value()))
    throw DegenerateDirectionError("mean spin vanishes (|<J>| = " + std::to_string(len) + ")");
  Vec3 n = mo.mean;
  for (auto& c : n) c /= len;
  const auto [n1, n2] = perpendicular_frame(n);

  std::array<Vec3, 3> cov = mo.second;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) cov[a][b] -= mo.mean[a] * mo.mean[b];

  const double v11 = quad(cov, n1, n1), v22 = quad(cov, n2, n2), v12 = quad(cov, n1, n2);
  const double s = v11 + v22;
  const double a = v11 - v22;
  const double b = 2.0 * v12;
  const double r = std::hypot(a, b);

  SqueezingReport rep;
  rep.mean_spin = mo.mean;
  rep.var_min = 0.5 * (s - r);
  rep.var_max = 0.5 * (s + r);
  rep.xi2 = 4.0 * rep.var_min / j.particles();
  rep.isotropic = r <= 1e-10 * std::max(1.0, s);
  if (!rep.isotropic) {
    double theta = 0.5 * std::atan2(-b, -a);
    if (theta < 0.0) theta += std::numbers::pi;
    if (theta >= std::numbers::pi) theta -= std::numbers::pi;
    rep.theta_min = theta;
  }
  return rep;
}

SqueezingReport squeezing_report(const DickeState& state) {
  return squeezing_report(state.spin(), spin_moments(state));
}

Vec3 mean_spin(const DickeState& state) { return spin_moments(state).mean; }

JzDistribution m_distribution(const DickeState& state) {
  JzDistribution d;
  d.probabilities.resize(state.dim());
  const auto j = state.spin();
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t k = 0; k < state.dim(); ++k) {
    const double p = std::norm(state[k]);
    d.probabilities[k] = p;
    m1 += p * j.m_at(k);
    m2 += p * j.m_at(k) * j.m_at(k);
  }
  d.mean = m1;
  d.variance = m2 - m1 * m1;
  return d;
}

double HusimiGrid::normalization(SpinLength j) const {
  const double dtheta = std::numbers::pi / static_cast<double>(theta_count);
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(phi_count);
  double s = 0.0;
  for (std::size_t i = 0; i < theta_count; ++i) {
    double row = 0.0;
    for (std::size_t k = 0; k < phi_count; ++k) row += at(i, k);
    s += row * std::sin(thetas[i]);
  }
  return s * dtheta * dphi * static_cast<double>(j.dim()) / (4.0 * std::numbers::pi);
}

namespace {

// One theta row: g_k = conj(c_k) psi_k with c = R_y(theta)|j,j>, then
// <theta,phi|psi> = e^{i phi j} sum_k g_k e^{-i phi k}.
void husimi_row(const DickeState& state, double theta, std::span<const double> phis, std::span<double> out) {
  const auto j = state.spin();
  std::vector<Complex> c(state.dim());
  c[0] = 1.0;
  rotate_y_in_place(j, c, theta);
  std::vector<Complex> g(state.dim());
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = std::conj(c[k]) * state[k];
  for (std::size_t p = 0; p < phis.size(); ++p) {
    const Complex w = std::polar(1.0, -phis[p]);
    Complex acc{};
    for (std::size_t k = g.size(); k-- > 0;) acc = acc * w + g[k];
    out[p] = std::norm(acc);
  }
}

HusimiGrid make_grid(std::size_t theta_count, std::size_t phi_count) {
  if (theta_count < 16 || phi_count < 32)
    throw DomainError("Husimi grid must be at least 16 x 32, got " + std::to_string(theta_count) + " x " +
                      std::to_string(phi_count));
  HusimiGrid grid;
  grid.theta_count = theta_count;
  grid.phi_count = phi_count;
  grid.thetas.resize(theta_count);
  grid.phis.resize(phi_count);
  for (std::size_t i = 0; i < theta_count; ++i)
    grid.thetas[i] = (static_cast<double>(i) + 0.5) * std::numbers::pi / static_cast<double>(theta_count);
  for (std::size_t k = 0; k < phi_count; ++k)
    grid.phis[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(phi_count);
  grid.q.assign(theta_count * phi_count, 0.0);
  return grid;
}

}  // namespace

double husimi_at(const DickeState& state, double theta, double phi) {
  const auto css = make_css(state.spin(), theta, phi);
  return std::norm(overlap(css, state));
}

HusimiGrid husimi_q(const DickeState& state, std::size_t theta_count, std::size_t phi_count) {
  auto grid = make_grid(theta_count, phi_count);
  const auto rows = static_cast<std::ptrdiff_t>(theta_count);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const auto r = static_cast<std::size_t>(i);
    husimi_row(state, grid.thetas[r], grid.phis, std::span<double>(grid.q).subspan(r * phi_count, phi_count));
  }
  return grid;
}

namespace serial {
HusimiGrid husimi_q(const DickeState& state, std::size_t theta_count, std::size_t phi_count) {
  auto grid = make_grid(theta_count, phi_count);
  for (std::size_t r = 0; r < theta_count; ++r)
    husimi_row(state, grid.thetas[r], grid.phis, std::span<double>(grid.q).subspan(r * phi_count, phi_count));
  return grid;
}
}  // namespace serial

void RunRecord::add_sample(double chi_t, const SqueezingReport& report) {
  if (!samples.empty() && !(chi_t > samples.back().chi_t))
    throw DomainError("run record sample times must be strictly increasing");
  samples.push_back({chi_t, report});
}

void RunRecord::add_event(std::string kind, double chi_t, std::string detail) {
  events.push_back({std::move(kind), chi_t, std::move(detail)});
}

Optimum find_optimum(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw DomainError("find_optimum: size mismatch");
  if (t.size() < 3) throw DomainError("find_optimum needs at least 3 samples, got " + std::to_string(t.size()));
  const auto i = static_cast<std::size_t>(std::min_element(y.begin(), y.end()) - y.begin());
  if (i == 0 || i + 1 == t.size()) return {t[i], y[i], true};
  const double f01 = (y[i] - y[i - 1]) / (t[i] - t[i - 1]);
  const double f12 = (y[i + 1] - y[i]) / (t[i + 1] - t[i]);
  const double a = (f12 - f01) / (t[i + 1] - t[i - 1]);
  if (!(a > 0.0)) return {t[i], y[i], false};
  double ts = 0.5 * (t[i - 1] + t[i]) - f01 / (2.0 * a);
  ts = std::clamp(ts, t[i - 1], t[i + 1]);
  const double ys = y[i - 1] + f01 * (ts - t[i - 1]) + a * (ts - t[i - 1]) * (ts - t[i]);
  return {ts, ys, false};
}

Optimum find_optimum(const RunRecord& record, double lo, double hi) {
  std::vector<double> t, y;
  for (const auto& s : record.samples) {
    if (s.chi_t >= lo && s.chi_t <= hi) {
      t.push_back(s.chi_t);
      y.push_back(s.report.xi2);
    }
  }
  return find_optimum(t, y);
}

ScalingFit scaling_fit(std::span<const ScalingPoint> points) {
  std::set<double> distinct;
  for (const auto& p : points) {
    if (!(p.n > 0.0) || !(p.xi2 > 0.0)) throw DomainError("scaling_fit needs positive N and xi2");
    distinct.insert(p.n);
  }
  if (distinct.size() < 3) throw DomainError("scaling_fit needs at least 3 distinct N");
  const double count = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    const double x = std::log(p.n), yv = std::log(p.xi2);
    sx += x;
    sy += yv;
    sxx += x * x;
    sxy += x * yv;
  }
  const double mx = sx / count, my = sy / count;
  const double slope = (sxy - count * mx * my) / (sxx - count * mx * mx);
  const double intercept = my - slope * mx;
  double ss = 0.0;
  for (const auto& p : points) {
    const double r = std::log(p.xi2) - (intercept + slope * std::log(p.n));
    ss += r * r;
  }
  return {slope, std::exp(intercept), std::sqrt(ss / count)};
}

}  // namespace squeeze
