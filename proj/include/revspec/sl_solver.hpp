#pragma once

#include <vector>

#include "revspec/geometry.hpp"
#include "revspec/grid_function.hpp"

namespace revspec {

/// Boundary conditions at x = 0 and x = 1 for the per-mode operator.
/// Dirichlet: f(0) = f(1) = 0.
/// Mixed:     f(0) = 0,            f'(1) + b f(1) = 0.
/// Robin:     f'(0) - a f(0) = 0,  f'(1) + b f(1) = 0.
struct BoundaryCondition {
  enum class Type { Dirichlet, Mixed, Robin };
  Type type = Type::Dirichlet;
  double a = 0.0;
  double b = 0.0;

  static BoundaryCondition dirichlet() { return {Type::Dirichlet, 0.0, 0.0}; }
  static BoundaryCondition mixed(double b) { return {Type::Mixed, 0.0, b}; }
  static BoundaryCondition robin(double a, double b) { return {Type::Robin, a, b}; }

  /// Dirichlet eigenvalues are indexed from 1, Mixed/Robin from 0.
  int first_index() const { return type == Type::Dirichlet ? 1 : 0; }
  const char* name() const;
};

/// The weighted Sturm-Liouville problem
///   -(1/rho^2) (rho^2 f')' + (E / r^2) f = mu f  on L^2([0,1]; r^m dx),
/// rho = r^{m/2}, with r given by the profile and E >= 0 the eigenvalue of
/// the cross-section Laplacian.
struct SLProblem {
  SurfaceProfile profile;
  double E = 0.0;
  BoundaryCondition bc;
};

struct SolveOptions {
  int grid_n = 800;        // even when richardson is set
  bool richardson = true;  // extrapolate across grid_n and grid_n/2
  int threads = 0;         // 0 = all, 1 = serial (batch operations only)
};

struct SchrodingerForm {
  GridFunction p;  // zero-mean potential
  double c0;       // integral((q0+q)^2 + E/r^2); spectra align as sigma_n + c0 = mu_n
  BoundaryCondition bc;  // a' = a + Q'(0), b' = b - Q'(1)
};

/// Unitary reduction y = rho f to the Schrodinger operator -y'' + p y.
SchrodingerForm to_schrodinger(const SLProblem& prob);

/// First n_max eigenvalues (n_max <= 200), each located by shooting on the
/// Schrodinger form: the Prufer angle mismatch is bracketed around the
/// unperturbed value, bisected, and polished by secant steps. Throws
/// SolverStall when bracketing fails.
std::vector<double> eigenvalues(const SLProblem& prob, int n_max, const SolveOptions& opts = {});

struct EigenResult {
  int index;                   // bc-appropriate index (Dirichlet from 1, else 0)
  double mu;
  GridFunction eigenfunction;  // unit norm in L^2(r^m dx), sign-fixed
  double norming_constant;
};

/// Single normalized eigenfunction; sign fixed by f'(0) > 0 (Dirichlet,
/// Mixed) or f(0) > 0 (Robin).
EigenResult eigenfunction(const SLProblem& prob, int n, const SolveOptions& opts = {});

/// Norming constant for mode n:
///   Dirichlet  kappa_n = log |rho(1) f'(1) / f'(0)|
///   Mixed      chi_n   = log |rho(1) f(1)  / f'(0)|
///   Robin      phi_n   = log |rho(1) f(1)  / f(0)|
/// computed from the boundary values carried by the shooting integration.
double norming_constant(const SLProblem& prob, int n, const SolveOptions& opts = {});

/// Batch solve (parallel over mode indices): eigenvalues, eigenfunctions and
/// norming constants for the first n_max modes.
std::vector<EigenResult> solve_modes(const SLProblem& prob, int n_max,
                                     const SolveOptions& opts = {});

struct ModeSummary {
  std::vector<double> mu;
  std::vector<double> norming;
};

/// Lean batch pass (no eigenfunction storage), used by the inverse solver's
/// Jacobian loop.
ModeSummary forward_modes(const SLProblem& prob, int n_max, const SolveOptions& opts = {});

/// Independent oracle: eigenvalues of the symmetric finite-difference
/// discretization of the weighted form itself (lumped P1 energy/mass,
/// reduced to a standard symmetric tridiagonal problem by diagonal scaling,
/// Sturm-sequence bisection), Richardson-extrapolated across n_grid and
/// n_grid/2. n_grid <= 4000.
std::vector<double> oracle_matrix_eigen(const SLProblem& prob, int n_grid, int n_max,
                                        int threads = 0);

}  // namespace revspec
