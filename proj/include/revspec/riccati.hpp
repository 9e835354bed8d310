#pragma once

#include <functional>
#include <vector>

#include "revspec/grid_function.hpp"

namespace revspec {

/// Potential law u(t) entering the mapping P. `none` is u = 0 (P reduces to
/// the plain Riccati map G at q0 = 0); `warped` is u(t) = E * exp(-4t/m),
/// the law produced by the E/r^2 term of the per-mode operator.
struct PotentialLaw {
  enum class Kind { None, Warped };
  Kind kind = Kind::None;
  double E = 0.0;
  int m = 1;

  static PotentialLaw none() { return {}; }
  static PotentialLaw warped(double E, int m);

  double value(double t) const;
  double derivative(double t) const;
};

struct RiccatiMap {
  GridFunction p;  // zero mean on the grid
  double c0;
};

/// p = q' + q^2 + 2 q0 q - c0 with c0 = integral(q^2 + 2 q0 q).
/// The returned p has its grid mean subtracted exactly.
RiccatiMap map_G(const GridFunction& q, double q0);

/// p = q' + q^2 + u(Q) - c0 with Q the antiderivative of q (q0 = 0 here)
/// and c0 = integral(q' + q^2 + u(Q)).
RiccatiMap map_P(const GridFunction& q, const PotentialLaw& law);

/// Directional derivative of G at q in direction f:
/// f' + 2 (q0 + q) f - integral(2 (q0 + q) f); zero mean on the grid.
GridFunction grad_G(const GridFunction& q, double q0, const GridFunction& f);

/// Directional derivative of P: f' + 2 q f + u'(Q) F - mean, F = cumulative f.
GridFunction grad_P(const GridFunction& q, const PotentialLaw& law, const GridFunction& f);

struct NewtonOptions {
  int max_iter = 50;
  double tol = 1e-10;  // L2 residual on interior nodes
};

struct NewtonReport {
  bool converged = false;
  int iterations = 0;
  std::vector<double> residuals;
};

/// Inverts map_G by damped Newton iteration from q = 0, using the exact
/// Jacobian of the discrete map on interior nodes (dense solve). Throws
/// NoConvergence with the residual history embedded in the message.
GridFunction invert_G(const GridFunction& p, double q0, const NewtonOptions& opts = {},
                      NewtonReport* report = nullptr);

/// Same iteration with the grad_P Jacobian.
GridFunction invert_P(const GridFunction& p, const PotentialLaw& law,
                      const NewtonOptions& opts = {}, NewtonReport* report = nullptr);

/// Samples u' on [t_lo, t_hi]; true iff u' <= 1e-12 everywhere sampled.
bool condition_u_check(const PotentialLaw& law, double t_lo, double t_hi, int samples = 512);
/// Same check for an arbitrary law given as a callable (derivative by
/// central differences).
bool condition_u_check(const std::function<double(double)>& u, double t_lo, double t_hi,
                       int samples = 512);

}  // namespace revspec
