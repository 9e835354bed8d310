#pragma once

#include <complex>
#include <vector>

#include "revspec/sl_solver.hpp"

namespace revspec {

/// Per-mode spectral data: eigenvalues mu_n, their decomposition
/// mu_n = mu_n^0 + c0 + tilde_mu_n against the unperturbed baseline, and the
/// norming constants. Index origin follows the boundary condition.
struct SpectralData {
  BoundaryCondition bc;
  std::vector<double> mu;
  std::vector<double> tilde_mu;
  std::vector<double> norming;
  std::vector<double> baseline;
  double c0 = 0.0;

  int size() const { return static_cast<int>(mu.size()); }
  /// Sequence index -> bc index (Dirichlet k -> k+1, else k).
  int mode_index(int k) const { return k + bc.first_index(); }
};

/// Unperturbed eigenvalue: Dirichlet (n pi)^2 (n >= 1), Mixed
/// pi^2 (n + 1/2)^2 + 2b (n >= 0), Robin (n pi)^2 + 2(a + b) (n >= 0).
double baseline_mu0(const BoundaryCondition& bc, int n);

/// c0 = integral((q0 + q)^2 + E / r^2).
double c0_from_profile(const SurfaceProfile& profile, double E);

/// Splits sorted eigenvalues into baseline + c0 + remainder. The stored mu
/// are re-composed from the parts so that
/// mu[k] == baseline[k] + c0 + tilde_mu[k] holds bit-for-bit (the
/// adjustment is below one ulp of the input).
SpectralData decompose(const std::vector<double>& mu, const BoundaryCondition& bc, double c0);

/// Attaches norming constants (convenience for forward pipelines).
SpectralData decompose(const std::vector<double>& mu, const std::vector<double>& norming,
                       const BoundaryCondition& bc, double c0);

/// Admissibility of a remainder sequence: baseline[0]+h[0] < baseline[1]+h[1] < ...
bool m1_check(const std::vector<double>& h, const std::vector<double>& baseline);

/// Partial sum of the weighted sequence norm 2 sum (2 pi n)^(2 alpha) h_n^2
/// over the supplied entries (n is the 1-based position).
double l2alpha_norm(const std::vector<double>& h, double alpha);

/// Product function for Mixed data:
///   w(lambda) = cos(sqrt(lambda)) * prod_n (lambda - mu_n) / (lambda - zeta_n),
/// zeta_n = pi^2 (n + 1/2)^2 the zeros of cos(sqrt(lambda)). The first
/// n_trunc factors are taken from the data; the remaining ones are modeled by
/// exp(-(2b + c0) * sum_{n >= n_trunc} 1/(lambda - zeta_n)) since
/// mu_n - zeta_n -> 2b + c0. Throws PoleHit within 1e-9 of a window zeta_n.
std::complex<double> w_eval(std::complex<double> lambda, const SpectralData& data, int n_trunc);

/// d w / d lambda at lambda = mu_k (a simple zero), with the vanishing
/// factor differentiated analytically.
double w_dlambda(double lambda, const SpectralData& data, int n_trunc);

struct BEstimate {
  double estimate;
  double last_term;  // magnitude of the final summand (convergence indicator)
};

/// Partial sum of b = sum_n (2 - exp(chi_n) / |w'(mu_n)|) over the first
/// n_terms modes of Mixed data.
BEstimate b_from_identity(const SpectralData& data, int n_terms);

}  // namespace revspec
