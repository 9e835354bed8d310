// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "revspec/errors.hpp"
#include "revspec/inverse.hpp"
#include "revspec/io.hpp"
#include "support/trig.hpp"
#include "support/weighted_shooting.hpp"

using namespace revspec;
using testsupport::TrigPoly;
using testsupport::random_w10;
using testsupport::weighted_norming;
using testsupport::weighted_rk4;

namespace {

struct Harness {
  int failures = 0;

  void run(int id, const std::string& name, const std::function<std::string()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = body();
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    if (detail.rfind("FAIL", 0) == 0) ok = false;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d. %-34s %s (%.2f s)\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str(), secs);
    if (!ok) ++failures;
  }
};

std::string pass(const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return std::string(buf);
}

std::string gate(bool ok, const std::string& detail) {
  return ok ? detail : "FAIL " + detail;
}

SurfaceProfile cylinder(int n) { return SurfaceProfile{1, 1.0, 0.0, GridFunction::zeros(n)}; }

}  // namespace

int main() {
  Harness h;

  h.run(1, "baseline Dirichlet spectrum", [] {
    const auto t0 = std::chrono::steady_clock::now();
    SLProblem prob{cylinder(1600), 0.0, BoundaryCondition::dirichlet()};
    auto mu = eigenvalues(prob, 20, SolveOptions{1600, true, 0});
    double worst = 0;
    for (int n = 1; n <= 20; ++n) {
      const double exact = n * n * M_PI * M_PI;
      worst = std::max(worst, std::abs(mu[n - 1] - exact) / exact);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return gate(worst <= 1e-6 && secs < 2.0,
                pass("max rel err %.2e (tol 1e-6), solve %.2f s (budget 2 s)", worst, secs));
  });

  h.run(2, "Mixed norming baseline", [] {
    SLProblem prob{cylinder(800), 0.0, BoundaryCondition::mixed(0.0)};
    double worst = 0;
    for (int n = 0; n <= 10; ++n) {
      const double chi = norming_constant(prob, n);
      worst = std::max(worst, std::abs(chi + std::log(M_PI * (n + 0.5))));
    }
    return gate(worst <= 1e-5, pass("max abs err %.2e (tol 1e-5)", worst));
  });

  h.run(3, "unitary equivalence of spectra", [] {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> unorm(0.1, 1.0), uq0(-0.5, 0.5), uE(0.0, 2.0);
    double worst_mu = 0, worst_norm = 0;
    for (int trial = 0; trial < 20; ++trial) {
      TrigPoly t = random_w10(rng, 6, unorm(rng));
      const double q0 = uq0(rng), E = uE(rng);
      const int m = 1 + trial % 3;
      SurfaceProfile p{m, 1.0, q0, t.sample(800)};
      for (auto bc : {BoundaryCondition::dirichlet(), BoundaryCondition::mixed(0.4),
                      BoundaryCondition::robin(0.8, -0.3)}) {
        SLProblem prob{p, E, bc};
        auto mu = eigenvalues(prob, 5);
        auto oracle = oracle_matrix_eigen(prob, 2000, 5);
        for (int i = 0; i < 5; ++i)
          worst_mu = std::max(
              worst_mu, std::abs(mu[i] - oracle[i]) / std::max(1.0, std::abs(oracle[i])));
        for (int i = 0; i < 3; ++i) {
          const double primary = norming_constant(prob, bc.first_index() + i);
          const double weighted =
              weighted_norming(weighted_rk4(t, q0, 1.0, m, E, bc, mu[i]), bc);
          worst_norm = std::max(worst_norm, std::abs(primary - weighted));
        }
      }
    }
    return gate(worst_mu <= 1e-6 && worst_norm <= 1e-6,
                pass("eigenvalue rel %.2e, norming abs %.2e (tol 1e-6)", worst_mu, worst_norm));
  });

  h.run(4, "Riccati map estimates", [] {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> unorm(0.05, 1.0), uq0(-1.0, 1.0);
    double worst_lower = 0, worst_upper = 0;  // signed violations
    for (int trial = 0; trial < 100; ++trial) {
      TrigPoly t = random_w10(rng, 6, unorm(rng));
      const double q0 = uq0(rng);
      const int n = 800;
      auto q = t.sample(n);
      auto qp = t.sample_derivative(n);
      const double c0 = integrate(q * q + 2.0 * q0 * q);
      auto p = qp + q * q + 2.0 * q0 * q - c0;
      const double p2 = integrate(p * p);
      const double qp2 = integrate(qp * qp);
      const double upper = qp2 + integrate(q * q * q * q) +
                           4 * q0 * q0 * integrate(q * q) + 4 * q0 * integrate(q * q * q);
      worst_lower = std::max(worst_lower, qp2 - p2);
      worst_upper = std::max(worst_upper, p2 - upper);
    }
    return gate(worst_lower <= 1e-8 && worst_upper <= 1e-8,
                pass("violations: lower %.2e, upper %.2e (slack 1e-8)", worst_lower, worst_upper));
  });

  h.run(5, "gradient correctness", [] {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uq0(-1.0, 1.0);
    const double eps = 1e-5;
    double worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
      TrigPoly tq = random_w10(rng, 5, 0.6);
      TrigPoly tf = random_w10(rng, 5, 0.8);
      auto q = tq.sample(400);
      auto f = tf.sample(400);
      const double q0 = uq0(rng);
      auto law = PotentialLaw::warped(0.5 + trial * 0.05, 1 + trial % 3);

      auto gG = grad_G(q, q0, f);
      auto pGp = map_G(q + eps * f, q0).p, pGm = map_G(q - eps * f, q0).p;
      auto gP = grad_P(q, law, f);
      auto pPp = map_P(q + eps * f, law).p, pPm = map_P(q - eps * f, law).p;
      double scaleG = 0, diffG = 0, scaleP = 0, diffP = 0;
      for (int k = 0; k <= 400; ++k) {
        diffG = std::max(diffG, std::abs(gG[k] - (pGp[k] - pGm[k]) / (2 * eps)));
        scaleG = std::max(scaleG, std::abs(gG[k]));
        diffP = std::max(diffP, std::abs(gP[k] - (pPp[k] - pPm[k]) / (2 * eps)));
        scaleP = std::max(scaleP, std::abs(gP[k]));
      }
      worst = std::max({worst, diffG / scaleG, diffP / scaleP});
    }
    return gate(worst <= 1e-6, pass("max rel err %.2e (tol 1e-6)", worst));
  });

  h.run(6, "Riccati inversion round trips", [] {
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> unorm(0.2, 1.0), uq0(-1.0, 1.0);
    double worst = 0;
    int worst_iters = 0;
    for (int trial = 0; trial < 8; ++trial) {
      TrigPoly t = random_w10(rng, 6, unorm(rng));
      const double q0 = uq0(rng);
      auto q = t.sample(800);
      NewtonReport rep;
      auto rec = invert_G(map_G(q, q0).p, q0, {}, &rep);
      worst = std::max(worst, norm(rec - q, SpaceTag::w10()));
      worst_iters = std::max(worst_iters, rep.iterations);
    }
    const double Es[] = {0.5, 1.0, 2.0, 1.5};
    for (int trial = 0; trial < 4; ++trial) {
      TrigPoly t = random_w10(rng, 5, 0.3 + 0.15 * trial);
      auto law = PotentialLaw::warped(Es[trial], 1 + trial % 3);
      auto q = t.sample(800);
      NewtonReport rep;
      auto rec = invert_P(map_P(q, law).p, law, {}, &rep);
      worst = std::max(worst, norm(rec - q, SpaceTag::w10()));
      worst_iters = std::max(worst_iters, rep.iterations);
    }
    return gate(worst <= 1e-7 && worst_iters <= 25,
                pass("max W10 err %.2e (tol 1e-7), max iters %d (budget 25)", worst, worst_iters));
  });

  h.run(7, "curvature mapping round trip", [] {
    std::mt19937 rng(8);
    double worst_q = 0, worst_k0 = 0;
    for (int trial = 0; trial < 5; ++trial) {
      TrigPoly t = random_w10(rng, 5, 0.2 + 0.15 * trial);
      const double q0 = -0.4 + 0.2 * trial;
      auto q = t.sample(800);
      auto cm = curvature_map_G(q, q0);
      auto rec = curvature_invert(cm.xi, q0);
      worst_q = std::max(worst_q, norm(rec - q, SpaceTag::w10()));
      worst_k0 = std::max(worst_k0, std::abs(curvature_map_G(rec, q0).k0 - cm.k0));
    }
    return gate(worst_q <= 1e-7 && worst_k0 <= 1e-8,
                pass("max W10 err %.2e (tol 1e-7), K0 err %.2e (tol 1e-8)", worst_q, worst_k0));
  });

  h.run(8, "b-identity", [] {
    // exact zero at every truncation for unperturbed data
    const int N = 100;
    std::vector<double> mu0(N), chi0(N);
    for (int n = 0; n < N; ++n) {
      mu0[n] = M_PI * M_PI * (n + 0.5) * (n + 0.5);
      chi0[n] = -std::log(M_PI * (n + 0.5));
    }
    auto base = decompose(mu0, chi0, BoundaryCondition::mixed(0.0), 0.0);
    double worst0 = 0;
    for (int terms : {1, 5, 20, 100})
      worst0 = std::max(worst0, std::abs(b_from_identity(base, terms).estimate));

    // forward-solved data recovers b = 0.5
    SurfaceProfile p{1, 1.0, 0.0,
                     GridFunction::sample(800, [](double x) { return 0.1 * std::sin(2 * M_PI * x); })};
    SLProblem prob{p, 0.0, BoundaryCondition::mixed(0.5)};
    auto fw = forward_modes(prob, 200, SolveOptions{1600, true, 0});
    auto data = decompose(fw.mu, fw.norming, prob.bc, c0_from_profile(p, 0.0));
    const double est = b_from_identity(data, 200).estimate;
    return gate(worst0 <= 1e-12 && std::abs(est - 0.5) <= 1e-2,
                pass("baseline sum %.1e (tol 1e-12); b estimate %.4f, err %.2e (tol 1e-2)",
                     worst0, est, std::abs(est - 0.5)));
  });

  h.run(9, "inverse spectral round trip", [] {
    InverseConfig cfg;  // N = 16, M = 12, grid 800
    FixedParams fixed{0.0, 1.0, 1, BoundaryCondition::dirichlet()};
    GridFunction q_full = GridFunction::sample(800, [](double x) {
      return 0.2 * std::sin(2 * M_PI * x) + 0.05 * std::sin(6 * M_PI * x);
    });
    const auto t0 = std::chrono::steady_clock::now();
    auto full = roundtrip_report(q_full, fixed, cfg, 0.0);
    const double secs_full =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    InverseConfig sym = cfg;
    sym.mode = InverseConfig::Mode::Symmetric;
    sym.m_basis = 6;
    FixedParams fixed_sym{0.0, 0.0, 1, BoundaryCondition::dirichlet()};
    GridFunction q_sym =
        GridFunction::sample(800, [](double x) { return 0.15 * std::sin(2 * M_PI * x); });
    const auto t1 = std::chrono::steady_clock::now();
    auto symrep = roundtrip_report(q_sym, fixed_sym, sym, 0.0);
    const double secs_sym =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();

    return gate(full.h0_error <= 1e-3 && symrep.h0_error <= 2e-3 && secs_full < 60.0 &&
                    secs_sym < 60.0,
                pass("full H0 err %.2e (tol 1e-3) in %.1f s; symmetric %.2e (tol 2e-3) in %.1f s",
                     full.h0_error, secs_full, symrep.h0_error, secs_sym));
  });

  h.run(10, "embedding round trips", [] {
    auto cone_f = GridFunction::sample(800, [](double x) { return 1.0 + 0.75 * x; });
    auto cone = arclength_normalize(cone_f, 1.0);
    auto cone_back = recover_embedding(cone.r, cone.t0);
    double worst = std::abs(cone_back.x0 - 1.0);
    for (int k = 0; k <= 800; ++k) {
      const double x = cone_back.x0 * cone_back.f.x(k);
      const double expect = 1.0 + 0.75 * x;
      worst = std::max(worst, std::abs(cone_back.f[k] - expect) / expect);
    }
    auto pert_fn = [](double x) { return 2.0 + 0.1 * std::sin(M_PI * x); };
    auto pert = arclength_normalize(GridFunction::sample(800, pert_fn), 1.0);
    auto pert_back = recover_embedding(pert.r, pert.t0);
    for (int k = 0; k <= 800; ++k) {
      const double x = pert_back.x0 * pert_back.f.x(k);
      worst = std::max(worst, std::abs(pert_back.f[k] - pert_fn(x)) / pert_fn(x));
    }
    bool rejected = false;
    try {
      recover_embedding(
          GridFunction::sample(800, [](double t) { return 1.0 + 0.5 * std::sin(M_PI * t); }));
    } catch (const SlopeTooSteep&) {
      rejected = true;
    }
    return gate(worst <= 1e-4 && rejected,
                pass("max rel err %.2e (tol 1e-4); steep profile rejected: %s", worst,
                     rejected ? "yes" : "no"));
  });

  if (h.failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", h.failures);
  return h.failures == 0 ? 0 : 1;
}
