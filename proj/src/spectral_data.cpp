#include "revspec/spectral_data.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "revspec/errors.hpp"

namespace revspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_index(const BoundaryCondition& bc, int n) {
  if (n < bc.first_index())
    throw std::invalid_argument(std::string("baseline_mu0: index ") + std::to_string(n) +
                                " below the " + bc.name() + " origin");
}

// Zeros of cos(sqrt(lambda)): the reference points of the product w.
double zeta(int n) {
  const double z = kPi * (n + 0.5);
  return z * z;
}

void require_mixed(const SpectralData& data, const char* who) {
  if (data.bc.type != BoundaryCondition::Type::Mixed)
    throw std::invalid_argument(std::string(who) + ": requires Mixed boundary data");
}

}  // namespace

double baseline_mu0(const BoundaryCondition& bc, int n) {
  require_index(bc, n);
  switch (bc.type) {
    case BoundaryCondition::Type::Dirichlet: return (n * kPi) * (n * kPi);
    case BoundaryCondition::Type::Mixed: return zeta(n) + 2.0 * bc.b;
    case BoundaryCondition::Type::Robin: return (n * kPi) * (n * kPi) + 2.0 * (bc.a + bc.b);
  }
  return 0.0;
}

double c0_from_profile(const SurfaceProfile& profile, double E) {
  if (E < 0.0) throw std::invalid_argument("c0_from_profile: E must be >= 0");
  profile.validate();
  GridFunction r = radius_from_q(profile);
  const int n = r.n();
  std::vector<double> integrand(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double qq = profile.q0 + profile.q[k];
    integrand[k] = qq * qq + E / (r[k] * r[k]);
  }
  return integrate(GridFunction(n, std::move(integrand)));
}

SpectralData decompose(const std::vector<double>& mu, const BoundaryCondition& bc, double c0) {
  SpectralData d;
  d.bc = bc;
  d.c0 = c0;
  d.baseline.resize(mu.size());
  d.tilde_mu.resize(mu.size());
  d.mu.resize(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) {
    if (k > 0 && !(mu[k] > mu[k - 1]))
      throw std::invalid_argument("decompose: eigenvalues must be strictly increasing");
    d.baseline[k] = baseline_mu0(bc, static_cast<int>(k) + bc.first_index());
    d.tilde_mu[k] = mu[k] - d.baseline[k] - c0;
    // re-compose so that mu == baseline + c0 + tilde_mu holds exactly
    d.mu[k] = d.baseline[k] + c0 + d.tilde_mu[k];
  }
  return d;
}

SpectralData decompose(const std::vector<double>& mu, const std::vector<double>& norming,
                       const BoundaryCondition& bc, double c0) {
  if (norming.size() != mu.size())
    throw std::invalid_argument("decompose: norming/mu length mismatch");
  SpectralData d = decompose(mu, bc, c0);
  d.norming = norming;
  return d;
}

bool m1_check(const std::vector<double>& h, const std::vector<double>& baseline) {
  if (h.size() != baseline.size()) throw std::invalid_argument("m1_check: length mismatch");
  for (std::size_t k = 1; k < h.size(); ++k)
    if (!(baseline[k - 1] + h[k - 1] < baseline[k] + h[k])) return false;
  return true;
}

double l2alpha_norm(const std::vector<double>& h, double alpha) {
  double s = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k)
    s += std::pow(2.0 * kPi * (static_cast<double>(k) + 1.0), 2.0 * alpha) * h[k] * h[k];
  return 2.0 * s;
}

namespace {

// sum_{m >= n_trunc} 1/(lambda - zeta_m): 4000 explicit terms plus the
// midpoint-rule integral remainder.
std::complex<double> tail_sum(std::complex<double> lambda, int n_trunc) {
  std::complex<double> s = 0.0;
  const int extra = 4000;
  for (int m = n_trunc; m < n_trunc + extra; ++m) s += 1.0 / (lambda - zeta(m));
  const double M = static_cast<double>(n_trunc + extra);
  const std::complex<double> w = std::sqrt(lambda) / kPi;
  if (std::abs(w) < 1e-8) return s - (1.0 / (kPi * kPi)) / M;
  s -= (1.0 / (kPi * kPi)) * std::log((M + w) / (M - w)) / (2.0 * w);
  return s;
}

void validate_window(const SpectralData& data, int n_trunc, const char* who) {
  if (n_trunc < 1 || n_trunc > data.size())
    throw std::invalid_argument(std::string(who) + ": n_trunc out of range");
}

// Tail exponent: mu_n - zeta_n -> 2b + c0.
double tail_coeff(const SpectralData& data) { return 2.0 * data.bc.b + data.c0; }

}  // namespace

std::complex<double> w_eval(std::complex<double> lambda, const SpectralData& data, int n_trunc) {
  require_mixed(data, "w_eval");
  validate_window(data, n_trunc, "w_eval");
  for (int n = 0; n < n_trunc; ++n)
    if (std::abs(lambda - zeta(n)) < 1e-9)
      throw PoleHit("lambda within 1e-9 of the reference point for n = " + std::to_string(n));
  std::complex<double> w = std::cos(std::sqrt(lambda));
  for (int n = 0; n < n_trunc; ++n) w *= (lambda - data.mu[n]) / (lambda - zeta(n));
  return w * std::exp(-tail_coeff(data) * tail_sum(lambda, n_trunc));
}

double w_dlambda(double lambda, const SpectralData& data, int n_trunc) {
  require_mixed(data, "w_dlambda");
  validate_window(data, n_trunc, "w_dlambda");
  int k = -1;
  for (int n = 0; n < data.size(); ++n)
    if (std::abs(lambda - data.mu[n]) <= 1e-6 * std::max(1.0, std::abs(lambda))) {
      k = n;
      break;
    }
  if (k < 0) throw std::invalid_argument("w_dlambda: lambda is not a data eigenvalue");

  // Vanishing factor differentiated analytically: the k-th numerator drops
  // and cos(sqrt(lambda))/(lambda - zeta_k) is taken as a limit when the
  // eigenvalue sits on the reference point itself (q = 0, b = 0 data).
  const double cs =
      lambda >= 0.0 ? std::cos(std::sqrt(lambda)) : std::cosh(std::sqrt(-lambda));
  double ck;
  if (std::abs(lambda - zeta(k)) >= 1e-9) {
    ck = cs / (lambda - zeta(k));
  } else if (std::abs(cs) < 1e-6) {
    const double sq = std::sqrt(lambda);  // zeta(k) > 0, so lambda > 0 on this branch
    ck = -std::sin(sq) / (2.0 * sq);
  } else {
    throw PoleHit("w_dlambda: lambda collides with the reference point for n = " +
                  std::to_string(k));
  }
  double val = ck;
  for (int n = 0; n < n_trunc; ++n) {
    if (n == k) continue;
    val *= (lambda - data.mu[n]) / (lambda - zeta(n));
  }
  const std::complex<double> ts = tail_sum(std::complex<double>(lambda, 0.0), n_trunc);
  return val * std::exp(-tail_coeff(data) * ts.real());
}

BEstimate b_from_identity(const SpectralData& data, int n_terms) {
  require_mixed(data, "b_from_identity");
  if (n_terms < 0 || n_terms > data.size())
    throw std::invalid_argument("b_from_identity: n_terms out of range");
  if (static_cast<int>(data.norming.size()) < n_terms)
    throw std::invalid_argument("b_from_identity: data lacks norming constants");
  double sum = 0.0, last = 0.0;
  for (int n = 0; n < n_terms; ++n) {
    const double wp = w_dlambda(data.mu[n], data, data.size());
    last = 2.0 - std::exp(data.norming[n]) / std::abs(wp);
    sum += last;
  }
  return {sum, std::abs(last)};
}

}  // namespace revspec
