#include "revspec/riccati.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "revspec/errors.hpp"

namespace revspec {

PotentialLaw PotentialLaw::warped(double E, int m) {
  if (E < 0.0) throw std::invalid_argument("PotentialLaw: E must be >= 0");
  if (m < 1) throw std::invalid_argument("PotentialLaw: m must be >= 1");
  return {Kind::Warped, E, m};
}

double PotentialLaw::value(double t) const {
  return kind == Kind::None ? 0.0 : E * std::exp(-4.0 * t / m);
}

double PotentialLaw::derivative(double t) const {
  return kind == Kind::None ? 0.0 : -(4.0 * E / m) * std::exp(-4.0 * t / m);
}

namespace {

GridFunction subtract_mean(const GridFunction& f) {
  return f - integrate(f);
}

double interior_l2(const GridFunction& r) {
  double s = 0.0;
  for (int k = 1; k < r.n(); ++k) s += r[k] * r[k];
  return std::sqrt(s * r.h());
}

}  // namespace

RiccatiMap map_G(const GridFunction& q, double q0) {
  GridFunction qp = differentiate(q);
  const int n = q.n();
  std::vector<double> raw(n + 1), c0_integrand(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double quad = q[k] * q[k] + 2.0 * q0 * q[k];
    raw[k] = qp[k] + quad;
    c0_integrand[k] = quad;
  }
  GridFunction num(n, std::move(raw));
  return {subtract_mean(num), integrate(GridFunction(n, std::move(c0_integrand)))};
}

RiccatiMap map_P(const GridFunction& q, const PotentialLaw& law) {
  GridFunction qp = differentiate(q);
  GridFunction Q = antiderivative(q);
  const int n = q.n();
  std::vector<double> raw(n + 1);
  for (int k = 0; k <= n; ++k) raw[k] = qp[k] + q[k] * q[k] + law.value(Q[k]);
  GridFunction num(n, std::move(raw));
  const double c0 = integrate(num);
  return {num - c0, c0};
}

GridFunction grad_G(const GridFunction& q, double q0, const GridFunction& f) {
  GridFunction fp = differentiate(f);
  const int n = q.n();
  std::vector<double> raw(n + 1);
  for (int k = 0; k <= n; ++k) raw[k] = fp[k] + 2.0 * (q0 + q[k]) * f[k];
  return subtract_mean(GridFunction(n, std::move(raw)));
}

GridFunction grad_P(const GridFunction& q, const PotentialLaw& law, const GridFunction& f) {
  GridFunction fp = differentiate(f);
  GridFunction Q = antiderivative(q);
  GridFunction F = antiderivative(f);
  const int n = q.n();
  std::vector<double> raw(n + 1);
  for (int k = 0; k <= n; ++k)
    raw[k] = fp[k] + 2.0 * q[k] * f[k] + law.derivative(Q[k]) * F[k];
  return subtract_mean(GridFunction(n, std::move(raw)));
}

namespace {

// Damped Newton over interior unknowns with the exact Jacobian of the
// discrete residual map. The step solves least squares over all grid rows:
// a square interior-only system admits a near-null sawtooth mode (central
// differences decouple even and odd nodes), which only the one-sided
// endpoint rows constrain. Those rows get weight h so that, for targets that
// are merely O(h^2)-consistent at the endpoints, they pin the oscillatory
// mode without competing with the interior fit. Convergence is judged on the
// interior residual alone.
GridFunction newton_invert(
    const GridFunction& p_target, const NewtonOptions& opts, NewtonReport* report,
    const std::function<GridFunction(const GridFunction&)>& residual,
    const std::function<GridFunction(const GridFunction&, const GridFunction&)>& linearize,
    const char* label) {
  const int n = p_target.n();
  const int dim = n - 1;
  NewtonReport local;
  NewtonReport& rep = report ? *report : local;

  GridFunction q = GridFunction::zeros(n);
  GridFunction r = residual(q);
  double rnorm = interior_l2(r);
  rep.residuals.push_back(rnorm);

  const double edge_weight = p_target.h();
  auto row_weight = [&](int i) { return (i == 0 || i == n) ? edge_weight : 1.0; };

  Eigen::MatrixXd J(n + 1, dim);
  Eigen::VectorXd rhs(n + 1), delta(dim);

  for (int it = 0; it < opts.max_iter && rnorm > opts.tol; ++it) {
    for (int k = 1; k < n; ++k) {
      std::vector<double> unit(n + 1, 0.0);
      unit[k] = 1.0;
      GridFunction col = linearize(q, GridFunction(n, std::move(unit)));
      for (int i = 0; i <= n; ++i) J(i, k - 1) = row_weight(i) * col[i];
    }
    for (int i = 0; i <= n; ++i) rhs(i) = -row_weight(i) * r[i];
    delta = J.householderQr().solve(rhs);

    // step halving until the residual decreases
    bool accepted = false;
    double step = 1.0;
    for (int half = 0; half < 30; ++half, step *= 0.5) {
      std::vector<double> trial(n + 1, 0.0);
      for (int k = 1; k < n; ++k) trial[k] = q[k] + step * delta(k - 1);
      GridFunction q_try(n, std::move(trial));
      GridFunction r_try = residual(q_try);
      const double rt = interior_l2(r_try);
      if (rt < rnorm) {
        q = std::move(q_try);
        r = std::move(r_try);
        rnorm = rt;
        accepted = true;
        break;
      }
    }
    rep.iterations = it + 1;
    rep.residuals.push_back(rnorm);
    if (!accepted) break;
  }

  rep.converged = rnorm <= opts.tol;
  if (!rep.converged) {
    std::ostringstream os;
    os << label << " stalled after " << rep.iterations << " iterations; residuals:";
    for (double v : rep.residuals) os << " " << v;
    throw NoConvergence(os.str());
  }
  return q;
}

void require_zero_mean(const GridFunction& p, const char* label) {
  const double mean = integrate(p);
  if (std::abs(mean) > 1e-6)
    throw std::invalid_argument(std::string(label) + ": target mean " + std::to_string(mean) +
                                " exceeds 1e-6");
}

}  // namespace

GridFunction invert_G(const GridFunction& p, double q0, const NewtonOptions& opts,
                      NewtonReport* report) {
  require_zero_mean(p, "invert_G");
  return newton_invert(
      p, opts, report,
      [&](const GridFunction& q) { return map_G(q, q0).p - p; },
      [&](const GridFunction& q, const GridFunction& f) { return grad_G(q, q0, f); },
      "invert_G");
}

GridFunction invert_P(const GridFunction& p, const PotentialLaw& law, const NewtonOptions& opts,
                      NewtonReport* report) {
  require_zero_mean(p, "invert_P");
  return newton_invert(
      p, opts, report,
      [&](const GridFunction& q) { return map_P(q, law).p - p; },
      [&](const GridFunction& q, const GridFunction& f) { return grad_P(q, law, f); },
      "invert_P");
}

bool condition_u_check(const PotentialLaw& law, double t_lo, double t_hi, int samples) {
  for (int i = 0; i <= samples; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / samples;
    if (law.derivative(t) > 1e-12) return false;
  }
  return true;
}

bool condition_u_check(const std::function<double(double)>& u, double t_lo, double t_hi,
                       int samples) {
  for (int i = 0; i <= samples; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / samples;
    const double dt = 1e-6 * std::max(1.0, std::abs(t));
    if ((u(t + dt) - u(t - dt)) / (2.0 * dt) > 1e-12) return false;
  }
  return true;
}

}  // namespace revspec
