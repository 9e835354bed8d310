#include "revspec/inverse.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "revspec/errors.hpp"
#include "revspec/parallel.hpp"

namespace revspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_config(const InverseConfig& cfg, const SpectralData& target) {
  if (cfg.n_modes < 4) throw std::invalid_argument("InverseConfig: n_modes must be >= 4");
  if (cfg.tol <= 0.0) throw std::invalid_argument("InverseConfig: tol must be positive");
  if (cfg.m_basis < 1 || cfg.m_basis > 2 * cfg.n_modes)
    throw std::invalid_argument("InverseConfig: m_basis must be in [1, 2*n_modes]");
  if (target.size() < cfg.n_modes)
    throw std::invalid_argument("reconstruct_q: target holds fewer modes than n_modes");
  if (cfg.mode == InverseConfig::Mode::Full &&
      static_cast<int>(target.norming.size()) < cfg.n_modes)
    throw std::invalid_argument("reconstruct_q: full mode needs norming constants");
}

void check_hypothesis(const FixedParams& fixed) {
  if (std::abs(fixed.q0) > 1e-14 && fixed.E > 1e-14)
    throw HypothesisViolation("q0 != 0 together with E > 0 is outside the solvable cases");
}

// q from sine coefficients; the basis keeps q(0) = q(1) = 0 exactly and, in
// symmetric mode, q odd about x = 1/2.
GridFunction q_from_coeffs(const std::vector<double>& a, int grid_n, InverseConfig::Mode mode) {
  std::vector<double> v(grid_n + 1, 0.0);
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double freq = (mode == InverseConfig::Mode::Symmetric ? 2.0 * (j + 1.0) : j + 1.0) * kPi;
    for (int k = 0; k <= grid_n; ++k)
      v[k] += a[j] * std::sin(freq * k / grid_n);
  }
  v[0] = v[grid_n] = 0.0;
  return GridFunction(grid_n, std::move(v));
}

struct ResidualContext {
  const SpectralData& target;
  const FixedParams& fixed;
  const InverseConfig& cfg;
  int rows() const {
    return cfg.mode == InverseConfig::Mode::Full ? 2 * cfg.n_modes : cfg.n_modes;
  }
};

Eigen::VectorXd residual_at(const ResidualContext& ctx, const std::vector<double>& a,
                            int threads) {
  const InverseConfig& cfg = ctx.cfg;
  SurfaceProfile profile{ctx.fixed.m, 1.0, ctx.fixed.q0, q_from_coeffs(a, cfg.grid_n, cfg.mode)};
  SLProblem prob{profile, ctx.fixed.E, ctx.fixed.bc};
  SolveOptions opts{cfg.grid_n, true, threads};
  ModeSummary fw = forward_modes(prob, cfg.n_modes, opts);
  const double c0 = c0_from_profile(profile, ctx.fixed.E);
  Eigen::VectorXd r(ctx.rows());
  const int first = ctx.fixed.bc.first_index();
  for (int k = 0; k < cfg.n_modes; ++k) {
    const double tilde = fw.mu[k] - baseline_mu0(ctx.fixed.bc, first + k) - c0;
    r(k) = tilde - ctx.target.tilde_mu[k];
  }
  if (cfg.mode == InverseConfig::Mode::Full)
    for (int k = 0; k < cfg.n_modes; ++k)
      r(cfg.n_modes + k) = fw.norming[k] - ctx.target.norming[k];
  return r;
}

Reconstruction reconstruct_impl(const SpectralData& target, const FixedParams& fixed,
                                const InverseConfig& cfg) {
  validate_config(cfg, target);
  check_hypothesis(fixed);
  if (target.bc.type != fixed.bc.type)
    throw std::invalid_argument("reconstruct_q: target bc does not match fixed bc");

  ResidualContext ctx{target, fixed, cfg};
  std::vector<double> a(cfg.m_basis, 0.0);
  Eigen::VectorXd r = residual_at(ctx, a, cfg.threads);
  double rnorm = r.norm();

  ReconstructionReport rep;
  rep.residual_history.push_back(rnorm);

  const double fd_step = 1e-4;
  Eigen::MatrixXd J(ctx.rows(), cfg.m_basis);

  for (int it = 0; it < cfg.max_iter && rnorm > cfg.tol; ++it) {
    // forward-difference Jacobian; the columns' forward solves are
    // independent and run concurrently
    par::parallel_for(
        cfg.m_basis,
        [&](int j) {
          std::vector<double> aj = a;
          aj[j] += fd_step;
          J.col(j) = (residual_at(ctx, aj, 1) - r) / fd_step;
        },
        cfg.threads);

    Eigen::VectorXd delta = J.colPivHouseholderQr().solve(-r);
    bool accepted = false;
    double step = 1.0;
    for (int half = 0; half < 12; ++half, step *= 0.5) {
      std::vector<double> a_try = a;
      for (int j = 0; j < cfg.m_basis; ++j) a_try[j] += step * delta(j);
      Eigen::VectorXd r_try = residual_at(ctx, a_try, cfg.threads);
      if (r_try.norm() < rnorm) {
        a = std::move(a_try);
        r = std::move(r_try);
        rnorm = r.norm();
        accepted = true;
        break;
      }
    }
    rep.iterations = it + 1;
    rep.residual_history.push_back(rnorm);
    if (!accepted) break;  // Gauss-Newton floor reached (noise or truncation)
  }
  rep.final_residual = rnorm;
  rep.converged = rnorm <= cfg.tol;
  return {q_from_coeffs(a, cfg.grid_n, cfg.mode), rep};
}

}  // namespace

Reconstruction reconstruct_q(const SpectralData& target, const FixedParams& fixed,
                             const InverseConfig& cfg) {
  Reconstruction rec = reconstruct_impl(target, fixed, cfg);
  if (!rec.report.converged) {
    std::ostringstream os;
    os << "reconstruct_q: residual " << rec.report.final_residual << " above tol " << cfg.tol
       << " after " << rec.report.iterations << " iterations";
    throw NoConvergence(os.str());
  }
  return rec;
}

Anchors Anchors::with_q0(double r0, double q0) {
  Anchors a;
  a.r0 = r0;
  a.q0 = q0;
  return a;
}

Anchors Anchors::with_r1(double r0, double r1) {
  Anchors a;
  a.r0 = r0;
  a.r1 = r1;
  return a;
}

double q0_from_anchors(const Anchors& anchors, const GridFunction& q, int m) {
  if (!(anchors.r0 > 0.0)) throw std::invalid_argument("Anchors: r0 must be positive");
  if (anchors.q0.has_value() == anchors.r1.has_value())
    throw std::invalid_argument("Anchors: exactly one of q0 or r1 must be set");
  if (anchors.q0) return *anchors.q0;
  if (!(*anchors.r1 > 0.0)) throw std::invalid_argument("Anchors: r1 must be positive");
  // log(r1/r0) = (2/m)(q0 + integral q)
  return 0.5 * m * std::log(*anchors.r1 / anchors.r0) - integrate(q);
}

SurfaceReconstruction reconstruct_surface(const GridFunction& q, const Anchors& anchors, int m) {
  SurfaceProfile profile{m, anchors.r0, q0_from_anchors(anchors, q, m), q};
  GridFunction r = radius_from_q(profile);
  return {profile, recover_embedding(r, 1.0)};
}

RoundtripReport roundtrip_report(const GridFunction& q_true, const FixedParams& fixed,
                                 const InverseConfig& cfg, double eta, unsigned seed) {
  SurfaceProfile profile{fixed.m, 1.0, fixed.q0, q_true};
  SLProblem prob{profile, fixed.E, fixed.bc};
  SolveOptions opts{cfg.grid_n, true, cfg.threads};
  ModeSummary fw = forward_modes(prob, cfg.n_modes, opts);
  const double c0 = c0_from_profile(profile, fixed.E);

  if (eta > 0.0) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (double& v : fw.mu) v *= 1.0 + eta * gauss(rng);
    for (double& v : fw.norming) v *= 1.0 + eta * gauss(rng);
  }
  SpectralData data = decompose(fw.mu, fw.norming, fixed.bc, c0);

  Reconstruction rec = reconstruct_impl(data, fixed, cfg);
  GridFunction truth = resample(q_true, cfg.grid_n);
  GridFunction diff = rec.q - truth;

  RoundtripReport out;
  out.noise_level = eta;
  out.w10_error = norm(diff, SpaceTag::w10());
  out.h0_error = norm(diff, SpaceTag::l2());
  out.reconstruction = rec.report;
  return out;
}

}  // namespace revspec
