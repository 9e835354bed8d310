#pragma once

#include <optional>
#include <vector>

#include "revspec/spectral_data.hpp"

namespace revspec {

/// Configuration of the truncated inverse problem. Full mode fits
/// eigenvalue remainders and norming constants; Symmetric fits eigenvalues
/// only over the odd-about-1/2 basis sin(2 pi k x).
struct InverseConfig {
  int n_modes = 16;   // truncation N of the data (>= 4)
  int m_basis = 12;   // sine coefficients representing q (M <= 2N)
  int grid_n = 800;
  int max_iter = 30;
  double tol = 1e-4;  // Gauss-Newton stop on the residual 2-norm
  enum class Mode { Full, Symmetric } mode = Mode::Full;
  int threads = 0;    // Jacobian columns run in parallel
};

/// Everything held fixed during reconstruction. Must satisfy one of the
/// solvable hypotheses: q0 = 0, or E = 0 (first cross-section mode);
/// q0 != 0 together with E > 0 is refused with HypothesisViolation.
struct FixedParams {
  double q0 = 0.0;
  double E = 0.0;
  int m = 1;
  BoundaryCondition bc;
};

struct ReconstructionReport {
  bool converged = false;
  int iterations = 0;
  double final_residual = 0.0;
  std::vector<double> residual_history;
};

struct Reconstruction {
  GridFunction q;
  ReconstructionReport report;
};

/// Gauss-Newton least squares on [tilde_mu(q) - target; norming(q) - target]
/// over the sine coefficients of q; Jacobian by forward differences with the
/// columns' forward solves running concurrently.
Reconstruction reconstruct_q(const SpectralData& target, const FixedParams& fixed,
                             const InverseConfig& cfg);

/// Anchoring data for rebuilding r from q: either (r0, q0) directly, or
/// (r0, r1) with q0 solved from log(r1/r0) = (2/m)(q0 + integral q).
struct Anchors {
  double r0 = 1.0;
  std::optional<double> q0;
  std::optional<double> r1;

  static Anchors with_q0(double r0, double q0);
  static Anchors with_r1(double r0, double r1);
};

struct SurfaceReconstruction {
  SurfaceProfile profile;
  EmbeddedSurface surface;
};

/// q0 implied by the anchoring data.
double q0_from_anchors(const Anchors& anchors, const GridFunction& q, int m);

/// Profile + embedded surface from a reconstructed q. SlopeTooSteep
/// propagates from the embedding step when |r'| reaches 1.
SurfaceReconstruction reconstruct_surface(const GridFunction& q, const Anchors& anchors, int m);

struct RoundtripReport {
  double w10_error = 0.0;
  double h0_error = 0.0;
  double noise_level = 0.0;
  ReconstructionReport reconstruction;
};

/// Forward-solves q_true, optionally perturbs the data with relative noise
/// eta (deterministic for a fixed seed), reconstructs, and reports errors.
RoundtripReport roundtrip_report(const GridFunction& q_true, const FixedParams& fixed,
                                 const InverseConfig& cfg, double eta = 0.0, unsigned seed = 1);

}  // namespace revspec
