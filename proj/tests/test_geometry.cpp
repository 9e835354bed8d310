#include <doctest.h>

#include <cmath>
#include <random>

#include "revspec/errors.hpp"
#include "revspec/geometry.hpp"
#include "support/trig.hpp"

using namespace revspec;
using testsupport::TrigPoly;
using testsupport::random_w10;

TEST_CASE("radius_from_q") {
  SurfaceProfile exp_profile{1, 1.0, 0.3, GridFunction::zeros(800)};
  auto r = radius_from_q(exp_profile);
  CHECK(r.front() == 1.0);
  CHECK(r.back() == doctest::Approx(std::exp(0.6)).epsilon(1e-8));

  SurfaceProfile flat{3, 2.5, 0.0, GridFunction::zeros(100)};
  auto rf = radius_from_q(flat);
  for (int k = 0; k <= rf.n(); ++k) CHECK(rf[k] == doctest::Approx(2.5).epsilon(1e-15));

  SurfaceProfile wavy{2, 1.0, 0.0,
                      GridFunction::sample(800, [](double x) { return 0.2 * std::sin(2 * M_PI * x); })};
  CHECK(radius_from_q(wavy).back() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("q_from_radius") {
  auto r = GridFunction::sample(800, [](double x) { return std::exp(0.6 * x); });
  auto qr = q_from_radius(r, 1);
  CHECK(qr.q0 == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(qr.r0 == 1.0);
  for (int k = 0; k <= qr.q.n(); ++k) CHECK(std::abs(qr.q[k]) <= 1e-6);

  auto qc = q_from_radius(GridFunction::constant(16, 2.0), 2);
  CHECK(std::abs(qc.q0) <= 1e-13);
  CHECK(qc.r0 == 2.0);
  for (int k = 0; k <= qc.q.n(); ++k) CHECK(std::abs(qc.q[k]) <= 1e-13);

  CHECK_THROWS_AS(q_from_radius(GridFunction::sample(16, [](double x) { return 0.5 - x; }), 1),
                  NonpositiveRadius);
}

TEST_CASE("q -> r -> q round trip recovers inputs") {
  SurfaceProfile p{2, 1.0, 0.0,
                   GridFunction::sample(800, [](double x) { return 0.2 * std::sin(2 * M_PI * x); })};
  auto qr = q_from_radius(radius_from_q(p), 2);
  CHECK(std::abs(qr.q0 - p.q0) < 1e-5);
  double worst = 0;
  for (int k = 0; k <= 800; ++k) worst = std::max(worst, std::abs(qr.q[k] - p.q[k]));
  CHECK(worst < 1e-5);
}

TEST_CASE("round trip is second order") {
  auto node_err = [](int n) {
    SurfaceProfile p{1, 1.0, 0.2,
                     GridFunction::sample(n, [](double x) { return 0.3 * std::sin(2 * M_PI * x); })};
    auto qr = q_from_radius(radius_from_q(p), 1);
    double worst = std::abs(qr.q0 - p.q0);
    for (int k = 0; k <= n; ++k) worst = std::max(worst, std::abs(qr.q[k] - p.q[k]));
    return worst;
  };
  const double e400 = node_err(400), e800 = node_err(800);
  CHECK(e800 <= 5.0 * (1.0 / 800.0) * (1.0 / 800.0));
  CHECK(e400 / e800 >= 3.5);
}

TEST_CASE("log r(1) reconstruction identity") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    TrigPoly t = random_w10(rng, 5, 0.4);
    const double q0 = -0.3 + 0.06 * trial;
    const int m = 1 + trial % 3;
    SurfaceProfile p{m, 1.3, q0, t.sample(800)};
    auto r = radius_from_q(p);
    const double lhs = std::log(r.back() / p.r0);
    const double rhs = (2.0 / m) * (q0 + integrate(p.q));
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("arclength_normalize") {
  auto cyl = arclength_normalize(GridFunction::constant(400, 2.0), 1.0);
  CHECK(cyl.t0 == doctest::Approx(1.0).epsilon(1e-12));
  for (int k = 0; k <= 400; ++k) CHECK(cyl.r[k] == doctest::Approx(2.0).epsilon(1e-12));

  auto cone = arclength_normalize(
      GridFunction::sample(400, [](double x) { return 1.0 + 0.75 * x; }), 1.0);
  CHECK(cone.t0 == doctest::Approx(1.25).epsilon(1e-10));
  double worst = 0;
  for (int k = 0; k <= 400; ++k)
    worst = std::max(worst, std::abs(cone.r[k] - (1.0 + 0.6 * cone.t0 * cone.r.x(k))));
  CHECK(worst < 1e-8);

  // t0 is the Simpson quadrature of sqrt(1 + f'^2) on the grid slopes, and
  // agrees with the analytic-derivative quadrature at the stencil order
  auto f = GridFunction::sample(800, [](double x) { return 2.0 + 0.1 * std::sin(M_PI * x); });
  auto res = arclength_normalize(f, 1.0);
  auto fp_grid = differentiate(f);
  std::vector<double> v(801);
  for (int k = 0; k <= 800; ++k) v[k] = std::sqrt(1.0 + fp_grid[k] * fp_grid[k]);
  GridFunction speed_grid(800, std::move(v));
  CHECK(res.t0 == doctest::Approx(integrate(speed_grid)).epsilon(1e-12));
  auto speed_exact = GridFunction::sample(800, [](double x) {
    const double fp = 0.1 * M_PI * std::cos(M_PI * x);
    return std::sqrt(1.0 + fp * fp);
  });
  CHECK(res.t0 == doctest::Approx(integrate(speed_exact)).epsilon(1e-6));
}

TEST_CASE("recover_embedding") {
  auto cyl = recover_embedding(GridFunction::constant(400, 2.0));
  CHECK(cyl.x0 == doctest::Approx(1.0).epsilon(1e-12));
  for (int k = 0; k <= 400; ++k) CHECK(cyl.f[k] == doctest::Approx(2.0).epsilon(1e-12));

  auto cone = recover_embedding(GridFunction::sample(400, [](double t) { return 1.0 + 0.6 * t; }));
  CHECK(cone.x0 == doctest::Approx(0.8).epsilon(1e-9));
  double worst = 0;
  for (int k = 0; k <= 400; ++k)
    worst = std::max(worst, std::abs(cone.f[k] - (1.0 + 0.75 * cone.x0 * cone.f.x(k))));
  CHECK(worst < 1e-6);
  for (std::size_t i = 1; i < cone.t_of_x.size(); ++i)
    CHECK(cone.t_of_x[i] > cone.t_of_x[i - 1]);

  CHECK_THROWS_AS(
      recover_embedding(GridFunction::sample(400, [](double t) { return 1.0 + 0.5 * std::sin(M_PI * t); })),
      SlopeTooSteep);
}

TEST_CASE("embedding round trips close") {
  // cone
  {
    auto fwd = arclength_normalize(GridFunction::sample(800, [](double x) { return 1.0 + 0.75 * x; }), 1.0);
    auto back = recover_embedding(fwd.r, fwd.t0);
    CHECK(back.x0 == doctest::Approx(1.0).epsilon(1e-6));
    double worst = 0;
    for (int k = 0; k <= back.f.n(); ++k) {
      const double x = back.x0 * back.f.x(k);
      worst = std::max(worst, std::abs(back.f[k] - (1.0 + 0.75 * x)) / (1.0 + 0.75 * x));
    }
    CHECK(worst <= 1e-4);
  }
  // perturbed cylinder
  {
    auto prof = [](double x) { return 2.0 + 0.1 * std::sin(M_PI * x); };
    auto fwd = arclength_normalize(GridFunction::sample(800, prof), 1.0);
    auto back = recover_embedding(fwd.r, fwd.t0);
    CHECK(back.x0 == doctest::Approx(1.0).epsilon(1e-5));
    double worst = 0;
    for (int k = 0; k <= back.f.n(); ++k) {
      const double x = back.x0 * back.f.x(k);
      worst = std::max(worst, std::abs(back.f[k] - prof(x)) / prof(x));
    }
    CHECK(worst <= 1e-4);
  }
}

TEST_CASE("estimate_t0") {
  std::vector<double> mu;
  for (int n = 1; n <= 20; ++n) mu.push_back(n * M_PI * n * M_PI);
  auto est = estimate_t0(mu);
  CHECK(est.t0 == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(est.c) < 1e-6);

  std::vector<double> mu2;
  for (int n = 1; n <= 20; ++n) mu2.push_back(n * M_PI * n * M_PI / 4.0 + 5.0);
  auto est2 = estimate_t0(mu2);
  CHECK(est2.t0 == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(est2.c == doctest::Approx(5.0).epsilon(1e-4));

  CHECK_THROWS_AS(estimate_t0(std::vector<double>{1, 2, 3}), std::invalid_argument);
  std::vector<double> falling(10);
  for (int i = 0; i < 10; ++i) falling[i] = 100.0 - i;  // negative slope against n^2
  CHECK_THROWS_AS(estimate_t0(falling), FitFailed);
}

TEST_CASE("gaussian_curvature") {
  auto r = GridFunction::sample(800, [](double x) { return std::exp(2.0 * 0.5 * x); });
  auto K = gaussian_curvature(r);
  for (int k = 0; k <= K.n(); ++k) CHECK(K[k] == doctest::Approx(-1.0).epsilon(1e-4));

  auto K1 = gaussian_curvature(GridFunction::constant(16, 1.0));
  for (int k = 0; k <= K1.n(); ++k) CHECK(std::abs(K1[k]) < 1e-12);

  CHECK_THROWS_AS(gaussian_curvature(GridFunction::sample(16, [](double x) { return 0.4 - x; })),
                  NonpositiveRadius);
}

TEST_CASE("curvature formulas agree") {
  // -r''/r vs -2q' - 4(q0+q)^2 for random W10 profiles
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    TrigPoly t = random_w10(rng, 5, 0.2 + 0.04 * trial);
    const double q0 = -0.4 + 0.04 * trial;
    SurfaceProfile p{1, 1.0, q0, t.sample(800)};
    auto K = gaussian_curvature(radius_from_q(p));
    double worst = 0;
    for (int k = 0; k <= 800; ++k) {
      const double x = K.x(k);
      const double direct = -2.0 * t.derivative(x) - 4.0 * std::pow(q0 + t(x), 2);
      worst = std::max(worst, std::abs(K[k] - direct));
    }
    CHECK(worst <= 1e-3);
  }
}

TEST_CASE("curvature_map_G") {
  auto zero = curvature_map_G(GridFunction::zeros(800), 0.7);
  CHECK(zero.k0 == 0.0);
  for (int k = 0; k <= 800; ++k) CHECK(std::abs(zero.xi[k]) < 1e-12);

  auto q = GridFunction::sample(800, [](double x) { return 0.2 * std::sin(2 * M_PI * x); });
  auto cm = curvature_map_G(q, 0.0);
  CHECK(cm.k0 == doctest::Approx(0.08).epsilon(1e-9));
  double worst = 0;
  for (int k = 0; k <= 800; ++k) {
    const double x = q.x(k);
    const double expect = 0.8 * M_PI * std::cos(2 * M_PI * x) - 0.08 * std::cos(4 * M_PI * x);
    worst = std::max(worst, std::abs(cm.xi[k] - expect));
  }
  CHECK(worst < 1e-3);

  // K = -xi - K0 - 4 q0^2 against the direct curvature for one profile
  SurfaceProfile p{1, 1.0, 0.1, q};
  auto cm2 = curvature_map_G(q, 0.1);
  auto K = gaussian_curvature(radius_from_q(p));
  double worst2 = 0;
  for (int k = 0; k <= 800; ++k)
    worst2 = std::max(worst2, std::abs(K[k] - (-cm2.xi[k] - cm2.k0 - 4.0 * 0.01)));
  CHECK(worst2 < 1e-3);
}

TEST_CASE("curvature xi has zero mean for random q") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    TrigPoly t = random_w10(rng, 6, 0.05 + 0.015 * trial);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    auto cm = curvature_map_G(t.sample(400), u(rng));
    CHECK(std::abs(integrate(cm.xi)) < 1e-9);
  }
}

TEST_CASE("curvature_invert round trip") {
  auto zero = curvature_invert(GridFunction::zeros(400), 0.4);
  for (int k = 0; k <= 400; ++k) CHECK(std::abs(zero[k]) < 1e-12);

  auto q = GridFunction::sample(800, [](double x) { return 0.2 * std::sin(2 * M_PI * x); });
  auto cm = curvature_map_G(q, 0.1);
  auto rec = curvature_invert(cm.xi, 0.1);
  CHECK(norm(rec - q, SpaceTag::w10()) <= 1e-7);
  CHECK(std::abs(curvature_map_G(rec, 0.1).k0 - cm.k0) <= 1e-8);
}

TEST_CASE("curvature inversion identity on random family") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    TrigPoly t = random_w10(rng, 5, 0.15 + 0.15 * trial);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    const double q0 = u(rng);
    auto q = t.sample(400);
    auto cm = curvature_map_G(q, q0);
    auto rec = curvature_invert(cm.xi, q0);
    CHECK(norm(rec - q, SpaceTag::w10()) <= 1e-7);
  }
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS((SurfaceProfile{0, 1.0, 0.0, GridFunction::zeros(8)}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((SurfaceProfile{1, -1.0, 0.0, GridFunction::zeros(8)}.validate()),
                  std::invalid_argument);
  SurfaceProfile bad{1, 1.0, 0.0, GridFunction::constant(8, 0.5)};
  CHECK_FALSE(bad.validate().ok);
}
