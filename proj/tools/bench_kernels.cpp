// Timings of the batch kernels, serial loop vs the OpenMP path. Run with
// --quick for the smoke configuration used by ctest.
#include <chrono>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <iostream>

#include "revspec/inverse.hpp"
#include "revspec/parallel.hpp"
#include "revspec/sl_solver.hpp"

using namespace revspec;

namespace {

double seconds(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* name, double serial, double parallel) {
  std::cout << std::left << std::setw(28) << name << std::right << std::fixed
            << std::setprecision(3) << std::setw(9) << serial << " s" << std::setw(9) << parallel
            << " s   speedup " << std::setprecision(2) << serial / parallel << "x\n";
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  const int grid = quick ? 400 : 1600;
  const int modes = quick ? 16 : 96;

  SurfaceProfile profile{2, 1.0, 0.0,
                         GridFunction::sample(grid, [](double x) {
                           return 0.2 * std::sin(2 * M_PI * x) + 0.1 * std::sin(6 * M_PI * x);
                         })};
  SLProblem prob{profile, 1.0, BoundaryCondition::dirichlet()};

  std::cout << "threads available: " << par::max_threads() << "\n";

  std::vector<double> mu_serial, mu_par;
  const double t_eig_s = seconds([&] {
    mu_serial = eigenvalues(prob, modes, SolveOptions{grid, true, 1});
  });
  const double t_eig_p = seconds([&] {
    mu_par = eigenvalues(prob, modes, SolveOptions{grid, true, 0});
  });
  double max_diff = 0.0;
  for (int k = 0; k < modes; ++k) max_diff = std::max(max_diff, std::abs(mu_serial[k] - mu_par[k]));
  report("batch eigenvalues", t_eig_s, t_eig_p);
  std::cout << "  serial/parallel max |diff| = " << std::scientific << max_diff << std::fixed
            << "\n";

  const int oracle_grid = quick ? 400 : 2000;
  const double t_or_s = seconds([&] { oracle_matrix_eigen(prob, oracle_grid, modes / 2, 1); });
  const double t_or_p = seconds([&] { oracle_matrix_eigen(prob, oracle_grid, modes / 2, 0); });
  report("matrix oracle", t_or_s, t_or_p);

  // one Gauss-Newton iteration worth of Jacobian forward solves
  FixedParams fixed{0.0, 1.0, 2, BoundaryCondition::dirichlet()};
  InverseConfig cfg;
  cfg.n_modes = quick ? 8 : 16;
  cfg.m_basis = quick ? 6 : 12;
  cfg.grid_n = quick ? 200 : 800;
  cfg.max_iter = 1;
  cfg.tol = 1e-30;  // force the single iteration to run
  GridFunction q_true = GridFunction::sample(cfg.grid_n, [](double x) {
    return 0.2 * std::sin(2 * M_PI * x);
  });
  const double t_gn_s = seconds([&] {
    InverseConfig c = cfg;
    c.threads = 1;
    roundtrip_report(q_true, fixed, c);
  });
  const double t_gn_p = seconds([&] {
    InverseConfig c = cfg;
    c.threads = 0;
    roundtrip_report(q_true, fixed, c);
  });
  report("Gauss-Newton iteration", t_gn_s, t_gn_p);
  return 0;
}
