#include "revspec/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "revspec/errors.hpp"
#include "revspec/interp.hpp"

namespace revspec {

MembershipReport SurfaceProfile::validate(double tol) const {
  if (m < 1) throw std::invalid_argument("SurfaceProfile: m must be >= 1");
  if (!(r0 > 0.0)) throw std::invalid_argument("SurfaceProfile: r0 must be positive");
  return check_membership(q, SpaceTag::w10(), tol);
}

GridFunction radius_from_q(const SurfaceProfile& profile) {
  GridFunction Q = antiderivative(profile.q + profile.q0);
  const int n = Q.n();
  std::vector<double> r(n + 1);
  for (int k = 0; k <= n; ++k) r[k] = profile.r0 * std::exp(2.0 * Q[k] / profile.m);
  return GridFunction(n, std::move(r));
}

QFromRadius q_from_radius(const GridFunction& r, int m) {
  if (m < 1) throw std::invalid_argument("q_from_radius: m must be >= 1");
  const int n = r.n();
  std::vector<double> logrho(n + 1);
  for (int k = 0; k <= n; ++k) {
    if (!(r[k] > 0.0))
      throw NonpositiveRadius("r(" + std::to_string(r.x(k)) + ") = " + std::to_string(r[k]));
    logrho[k] = 0.5 * m * std::log(r[k]);
  }
  GridFunction d = differentiate(GridFunction(n, std::move(logrho)));
  const double q0 = d.front();
  return {q0, d - q0, r.front()};
}

ArclengthResult arclength_normalize(const GridFunction& f, double x0) {
  if (!(x0 > 0.0)) throw std::invalid_argument("arclength_normalize: x0 must be positive");
  const int n = f.n();
  GridFunction fp = (1.0 / x0) * differentiate(f);
  std::vector<double> speed(n + 1);
  for (int k = 0; k <= n; ++k) speed[k] = std::sqrt(1.0 + fp[k] * fp[k]);
  // t(x) cumulative over the physical coordinate; dt/dx = sqrt(1 + f'^2)
  GridFunction t_of_s = antiderivative(GridFunction(n, std::move(speed)));
  std::vector<double> t_table(n + 1), x_table(n + 1), s_nodes(n + 1);
  for (int k = 0; k <= n; ++k) {
    t_table[k] = x0 * t_of_s[k];
    x_table[k] = x0 * f.x(k);
    s_nodes[k] = f.x(k);
  }
  const double t0 = t_table[n];

  MonotoneCubic x_of_t(t_table, x_table);
  CubicInterp f_of_s(std::move(s_nodes), f.values());
  std::vector<double> rv(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double t = t0 * j / n;
    rv[j] = f_of_s(x_of_t(t) / x0);
  }
  rv[0] = f.front();
  rv[n] = f.back();
  return {GridFunction(n, std::move(rv)), t0};
}

EmbeddedSurface recover_embedding(const GridFunction& r, double t0) {
  if (!(t0 > 0.0)) throw std::invalid_argument("recover_embedding: t0 must be positive");
  const int n = r.n();
  for (int k = 0; k <= n; ++k)
    if (!(r[k] > 0.0))
      throw NonpositiveRadius("r(" + std::to_string(t0 * r.x(k)) + ") = " + std::to_string(r[k]));

  GridFunction rp = (1.0 / t0) * differentiate(r);
  std::vector<double> pace(n + 1);
  for (int k = 0; k <= n; ++k) {
    if (std::abs(rp[k]) >= 1.0 - 1e-9)
      throw SlopeTooSteep("|r'(" + std::to_string(t0 * r.x(k)) + ")| = " +
                          std::to_string(std::abs(rp[k])) + " >= 1 - 1e-9");
    pace[k] = std::sqrt(1.0 - rp[k] * rp[k]);
  }
  GridFunction x_of_s = antiderivative(GridFunction(n, std::move(pace)));
  std::vector<double> x_table(n + 1), t_table(n + 1), s_nodes(n + 1);
  for (int k = 0; k <= n; ++k) {
    x_table[k] = t0 * x_of_s[k];
    t_table[k] = t0 * r.x(k);
    s_nodes[k] = r.x(k);
  }
  const double x0 = x_table[n];

  MonotoneCubic t_of_x(x_table, t_table);
  CubicInterp r_of_s(std::move(s_nodes), r.values());
  std::vector<double> fv(n + 1), ts(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double x = x0 * j / n;
    ts[j] = t_of_x(x);
    fv[j] = r_of_s(ts[j] / t0);
  }
  ts[0] = 0.0;
  ts[n] = t0;
  fv[0] = r.front();
  fv[n] = r.back();
  return {x0, GridFunction(n, std::move(fv)), std::move(ts)};
}

T0Estimate estimate_t0(const std::vector<double>& mu) {
  const int len = static_cast<int>(mu.size());
  if (len < 8) throw std::invalid_argument("estimate_t0: need at least 8 eigenvalues");
  // fit mu_n = A n^2 + c over the top half (n is the 1-based position)
  const int start = len / 2;
  double sx = 0, sxx = 0, sy = 0, sxy = 0;
  int count = 0;
  for (int i = start; i < len; ++i) {
    const double xn = static_cast<double>(i + 1) * (i + 1);
    sx += xn;
    sxx += xn * xn;
    sy += mu[i];
    sxy += xn * mu[i];
    ++count;
  }
  const double det = count * sxx - sx * sx;
  const double A = (count * sxy - sx * sy) / det;
  const double c = (sy * sxx - sx * sxy) / det;
  if (!(A > 0.0)) throw FitFailed("fitted leading coefficient " + std::to_string(A) + " <= 0");
  return {M_PI / std::sqrt(A), c};
}

GridFunction gaussian_curvature(const GridFunction& r) {
  if (r.n() < 8) throw std::invalid_argument("gaussian_curvature: need n_intervals >= 8");
  const int n = r.n();
  for (int k = 0; k <= n; ++k)
    if (!(r[k] > 0.0))
      throw NonpositiveRadius("r(" + std::to_string(r.x(k)) + ") = " + std::to_string(r[k]));
  GridFunction rpp = second_derivative(r);
  std::vector<double> kappa(n + 1);
  for (int k = 0; k <= n; ++k) kappa[k] = -rpp[k] / r[k];
  return GridFunction(n, std::move(kappa));
}

CurvatureMap curvature_map_G(const GridFunction& q, double q0) {
  // xi = 2q' + 4q^2 + 8 q0 q - K0 is map_G applied to v = 2q at v0 = 2 q0
  RiccatiMap rm = map_G(2.0 * q, 2.0 * q0);
  return {rm.p, rm.c0};
}

GridFunction curvature_invert(const GridFunction& xi, double q0, const NewtonOptions& opts,
                              NewtonReport* report) {
  GridFunction v = invert_G(xi, 2.0 * q0, opts, report);
  return 0.5 * v;
}

}  // namespace revspec
