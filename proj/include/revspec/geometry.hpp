#pragma once

#include <vector>

#include "revspec/grid_function.hpp"
#include "revspec/riccati.hpp"

namespace revspec {

/// Rotation profile r(x) = r0 * exp(2 Q(x) / m), Q = integral of q0 + q,
/// for the warped-product metric dx^2 + r(x)^2 g0 on [0,1] x Y.
/// m = dim Y, q0 = rho'(0)/rho(0) with rho = r^{m/2}.
struct SurfaceProfile {
  int m = 1;
  double r0 = 1.0;
  double q0 = 0.0;
  GridFunction q = GridFunction::zeros(800);

  /// Throws std::invalid_argument on m < 1 or r0 <= 0; returns the W10
  /// membership report for q at the given tolerance.
  MembershipReport validate(double tol = 1e-6) const;
};

/// Samples of r(x); r(0) = r0 exactly.
GridFunction radius_from_q(const SurfaceProfile& profile);

struct QFromRadius {
  double q0;
  GridFunction q;
  double r0;
};

/// Inverse of radius_from_q: rho = r^{m/2}, q0 = (log rho)'(0) by a one-sided
/// stencil, q = (log rho)' - q0. q(1) is reported, not forced, to zero.
/// Throws NonpositiveRadius.
QFromRadius q_from_radius(const GridFunction& r, int m);

struct ArclengthResult {
  GridFunction r;  // r(t) on a uniform grid over [0, t0]
  double t0;
};

/// Change of variable to arclength: t0 = integral of sqrt(1 + f'^2) over
/// [0, x0]; r(t) = f(x(t)) resampled on a uniform t-grid via monotone
/// inversion of t(x). f is given on a uniform grid over [0, x0].
ArclengthResult arclength_normalize(const GridFunction& f, double x0);

struct EmbeddedSurface {
  double x0;
  GridFunction f;               // f on a uniform grid over [0, x0]
  std::vector<double> t_of_x;   // arclength t at the nodes of f (strictly increasing)
};

/// Recovers the graph profile f from r(t) on [0, t0]: x(t) by cumulative
/// quadrature of sqrt(1 - r'^2), then monotone inversion. Throws
/// SlopeTooSteep when |r'| >= 1 - 1e-9 anywhere (no graph embedding).
EmbeddedSurface recover_embedding(const GridFunction& r, double t0 = 1.0);

struct T0Estimate {
  double t0;
  double c;
};

/// Least-squares fit mu_n ~ (n pi / t0)^2 + c over the top half of the
/// supplied (sorted, 1-based) eigenvalues. Needs >= 8 values; throws
/// FitFailed when the fitted leading coefficient is not positive.
T0Estimate estimate_t0(const std::vector<double>& mu);

/// Gaussian curvature -r''/r of the surface of revolution (m = 1).
GridFunction gaussian_curvature(const GridFunction& r);

struct CurvatureMap {
  GridFunction xi;  // zero mean
  double k0;        // 4 * integral(2 q0 q + q^2)
};

/// Curvature mapping xi = 2q' + 4q^2 + 8 q0 q - K0, so that the Gaussian
/// curvature is -xi - K0 - 4 q0^2. Equals map_G(2q, 2q0).
CurvatureMap curvature_map_G(const GridFunction& q, double q0);

/// Newton inversion of curvature_map_G at fixed q0; xi must have zero mean
/// within 1e-6.
GridFunction curvature_invert(const GridFunction& xi, double q0, const NewtonOptions& opts = {},
                              NewtonReport* report = nullptr);

}  // namespace revspec
