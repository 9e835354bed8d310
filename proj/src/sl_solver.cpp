#include "revspec/sl_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "revspec/errors.hpp"
#include "revspec/parallel.hpp"

namespace revspec {

const char* BoundaryCondition::name() const {
  switch (type) {
    case Type::Dirichlet: return "dirichlet";
    case Type::Mixed: return "mixed";
    case Type::Robin: return "robin";
  }
  return "?";
}

namespace {

struct NodeData {
  GridFunction q = GridFunction::zeros(8);
  GridFunction Q = GridFunction::zeros(8);  // antiderivative of q0 + q
  std::vector<double> rho2;                 // r^m at the nodes
  std::vector<double> u;                    // E / r^2
  double q0 = 0.0;
  double rho0 = 1.0;                        // r0^{m/2}
  double c0 = 0.0;                          // integral((q0+q)^2 + u)
};

NodeData build_nodes(const SLProblem& prob, int ngrid) {
  if (prob.E < 0.0) throw std::invalid_argument("SLProblem: E must be >= 0");
  NodeData nd;
  nd.q0 = prob.profile.q0;
  nd.q = resample(prob.profile.q, ngrid);
  nd.Q = antiderivative(nd.q + nd.q0);
  nd.rho0 = std::pow(prob.profile.r0, 0.5 * prob.profile.m);
  nd.rho2.resize(ngrid + 1);
  nd.u.resize(ngrid + 1);
  std::vector<double> w(ngrid + 1);
  for (int k = 0; k <= ngrid; ++k) {
    const double r = prob.profile.r0 * std::exp(2.0 * nd.Q[k] / prob.profile.m);
    nd.rho2[k] = std::pow(r, prob.profile.m);
    nd.u[k] = prob.E / (r * r);
    const double qq = nd.q0 + nd.q[k];
    w[k] = qq * qq + nd.u[k];
  }
  nd.c0 = integrate(GridFunction(ngrid, std::move(w)));
  return nd;
}

BoundaryCondition transform_bc(const BoundaryCondition& bc, double qprime0, double qprime1) {
  switch (bc.type) {
    case BoundaryCondition::Type::Dirichlet: return bc;
    case BoundaryCondition::Type::Mixed: return BoundaryCondition::mixed(bc.b - qprime1);
    case BoundaryCondition::Type::Robin:
      return BoundaryCondition::robin(bc.a + qprime0, bc.b - qprime1);
  }
  return bc;
}

// Piecewise-constant-coefficient cells of the transformed problem
// -y'' + p y = sigma y. The q' part of each cell average is exact
// ((q_{k+1} - q_k)/h), so no differentiation stencil enters the solve.
struct ShootCells {
  std::vector<double> pbar;
  double h = 0.0;
  double c0 = 0.0;
  BoundaryCondition bcp;
  NodeData nodes;
};

ShootCells build_cells(const SLProblem& prob, int ngrid) {
  ShootCells sc;
  sc.nodes = build_nodes(prob, ngrid);
  const NodeData& nd = sc.nodes;
  sc.h = 1.0 / ngrid;
  sc.c0 = nd.c0;
  sc.bcp = transform_bc(prob.bc, nd.q0 + nd.q.front(), nd.q0 + nd.q.back());
  sc.pbar.resize(ngrid);
  for (int k = 0; k < ngrid; ++k) {
    const double w0 = (nd.q0 + nd.q[k]) * (nd.q0 + nd.q[k]) + nd.u[k];
    const double w1 = (nd.q0 + nd.q[k + 1]) * (nd.q0 + nd.q[k + 1]) + nd.u[k + 1];
    sc.pbar[k] = (nd.q[k + 1] - nd.q[k]) / sc.h + 0.5 * (w0 + w1) - nd.c0;
  }
  return sc;
}

struct EndState {
  double u = 0.0, du = 0.0;
  long zeros = 0;
  double log_scale = 0.0;
};

constexpr double kPi = 3.14159265358979323846;

// One cell with constant potential: exact rotation (tau > 0) or
// cosh/sinh propagation (tau < 0); zero counting per cell.
inline void cell_step(double tau, double h, double& u, double& du, long& zeros) {
  if (tau > 1e-12) {
    const double w = std::sqrt(tau);
    const double wh = w * h;
    const double c = std::cos(wh), s = std::sin(wh);
    double psi = std::fmod(std::atan2(w * u, du), kPi);
    if (psi < 0.0) psi += kPi;
    zeros += static_cast<long>(std::floor((psi + wh) / kPi));
    const double un = u * c + du * (s / w);
    du = -u * w * s + du * c;
    u = un;
  } else if (tau < -1e-12) {
    const double k = std::sqrt(-tau);
    const double kh = k * h;
    const double ch = std::cosh(kh), sh = std::sinh(kh);
    const double un = u * ch + du * (sh / k);
    const double dun = u * k * sh + du * ch;
    if (u * un < 0.0 || (un == 0.0 && u != 0.0)) ++zeros;
    u = un;
    du = dun;
  } else {
    // |tau| <= 1e-12: the curvature term is below rounding for any |u| here
    const double un = u + du * h;
    if (u * un < 0.0 || (un == 0.0 && u != 0.0)) ++zeros;
    u = un;
  }
}

EndState propagate(const ShootCells& sc, double lambda, double u0, double du0,
                   std::vector<double>* node_u = nullptr, std::vector<double>* node_ls = nullptr) {
  EndState st{u0, du0, 0, 0.0};
  const int n = static_cast<int>(sc.pbar.size());
  if (node_u) {
    node_u->assign(n + 1, 0.0);
    node_ls->assign(n + 1, 0.0);
    (*node_u)[0] = u0;
  }
  for (int j = 0; j < n; ++j) {
    cell_step(lambda - sc.pbar[j], sc.h, st.u, st.du, st.zeros);
    const double mag = std::max(std::abs(st.u), std::abs(st.du));
    if (mag > 1e140 || (mag < 1e-140 && mag > 0.0)) {
      st.u /= mag;
      st.du /= mag;
      st.log_scale += std::log(mag);
    }
    if (node_u) {
      (*node_u)[j + 1] = st.u;
      (*node_ls)[j + 1] = st.log_scale;
    }
  }
  return st;
}

struct Seed {
  double u0, du0;
  double offset;  // eigencondition theta(1) = n*pi + offset
};

Seed seed_for(const BoundaryCondition& bcp) {
  switch (bcp.type) {
    case BoundaryCondition::Type::Dirichlet: return {0.0, 1.0, kPi};
    case BoundaryCondition::Type::Mixed: return {0.0, 1.0, kPi / 2.0 + std::atan(bcp.b)};
    case BoundaryCondition::Type::Robin: return {1.0, bcp.a, kPi / 2.0 + std::atan(bcp.b)};
  }
  return {0.0, 1.0, kPi};
}

// Continuous Prufer angle at x = 1: pi * (#zeros of u in (0,1]) + residue.
double theta_end(const ShootCells& sc, const Seed& seed, double lambda) {
  EndState st = propagate(sc, lambda, seed.u0, seed.du0);
  double delta = 0.0;
  if (st.u != 0.0) {
    delta = std::fmod(std::atan2(st.u, st.du), kPi);
    if (delta < 0.0) delta += kPi;
    if (delta == 0.0) delta = kPi;  // u > 0 with angle folding onto the axis
  }
  return kPi * static_cast<double>(st.zeros) + delta;
}

double schrod_baseline(const BoundaryCondition& bcp, int n) {
  switch (bcp.type) {
    case BoundaryCondition::Type::Dirichlet: return (n * kPi) * (n * kPi);
    case BoundaryCondition::Type::Mixed: {
      const double z = kPi * (n + 0.5);
      return z * z + 2.0 * bcp.b;
    }
    case BoundaryCondition::Type::Robin: return (n * kPi) * (n * kPi) + 2.0 * (bcp.a + bcp.b);
  }
  return 0.0;
}

// Bisection on the monotone angle mismatch to (near) machine precision.
double solve_sigma(const ShootCells& sc, int index) {
  const Seed seed = seed_for(sc.bcp);
  // For Dirichlet the target theta(1) = index*pi comes out of the offset
  // convention with (index-1) full turns plus pi.
  const double target =
      (sc.bcp.type == BoundaryCondition::Type::Dirichlet ? (index - 1) : index) * kPi +
      seed.offset;
  double width = std::abs(sc.c0) + 10.0;
  double lo = schrod_baseline(sc.bcp, index) - width;
  double hi = schrod_baseline(sc.bcp, index) + width;
  bool ok_lo = false, ok_hi = false;
  for (int tries = 0; tries < 80; ++tries) {
    if (!ok_lo) ok_lo = theta_end(sc, seed, lo) < target;
    if (!ok_hi) ok_hi = theta_end(sc, seed, hi) > target;
    if (ok_lo && ok_hi) break;
    width *= 2.0;
    if (!ok_lo) lo -= width;
    if (!ok_hi) hi += width;
  }
  if (!ok_lo || !ok_hi)
    throw SolverStall("bracketing failed for eigenvalue index " + std::to_string(index));
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (theta_end(sc, seed, mid) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

// Norming constant from the boundary values of y = rho f carried by the
// shooting state; the rho(0) factor restores the weighted-picture value.
double norming_from_state(const ShootCells& sc, const EndState& st) {
  const double scale = std::max(std::abs(st.u), std::abs(st.du));
  double numerator;
  switch (sc.bcp.type) {
    case BoundaryCondition::Type::Dirichlet: numerator = st.du; break;
    default: numerator = st.u; break;
  }
  if (scale == 0.0 || std::abs(numerator) < 1e-12 * scale)
    throw DegenerateBoundaryValue("boundary value " + std::to_string(numerator) +
                                  " too small for a norming constant");
  return std::log(std::abs(numerator)) + st.log_scale + std::log(sc.nodes.rho0);
}

struct ModeScalars {
  double mu;
  double norming;
};

ModeScalars mode_scalars(const ShootCells& sc, int index) {
  const double sigma = solve_sigma(sc, index);
  const Seed seed = seed_for(sc.bcp);
  EndState st = propagate(sc, sigma, seed.u0, seed.du0);
  return {sigma + sc.c0, norming_from_state(sc, st)};
}

void validate_options(const SolveOptions& opts) {
  if (opts.grid_n < 8) throw std::invalid_argument("SolveOptions: grid_n must be >= 8");
  if (opts.richardson && (opts.grid_n % 2 != 0 || opts.grid_n < 16))
    throw std::invalid_argument("SolveOptions: richardson needs an even grid_n >= 16");
}

void validate_mode_count(const SLProblem& prob, int n_max) {
  if (n_max < 1 || n_max > 200)
    throw std::invalid_argument("n_max must be in [1, 200]");
  if (!std::isfinite(prob.bc.a) || !std::isfinite(prob.bc.b))
    throw std::invalid_argument("BoundaryCondition: parameters must be finite");
  prob.profile.validate();
}

// Richardson pair of cell structures (coarse one empty when disabled).
struct CellPair {
  ShootCells fine, coarse;
  bool richardson;
};

CellPair build_pair(const SLProblem& prob, const SolveOptions& opts) {
  validate_options(opts);
  // Resample q once; the coarse grid then subsamples the same interpolant,
  // keeping the Richardson pair consistent for off-grid inputs.
  SLProblem on_grid = prob;
  on_grid.profile.q = resample(prob.profile.q, opts.grid_n);
  CellPair cp{build_cells(on_grid, opts.grid_n), ShootCells{}, opts.richardson};
  if (opts.richardson) cp.coarse = build_cells(on_grid, opts.grid_n / 2);
  return cp;
}

ModeScalars extrapolated_scalars(const CellPair& cp, int index) {
  ModeScalars fine = mode_scalars(cp.fine, index);
  if (!cp.richardson) return fine;
  ModeScalars coarse = mode_scalars(cp.coarse, index);
  return {(4.0 * fine.mu - coarse.mu) / 3.0, (4.0 * fine.norming - coarse.norming) / 3.0};
}

}  // namespace

SchrodingerForm to_schrodinger(const SLProblem& prob) {
  prob.profile.validate();
  const int n = prob.profile.q.n();
  NodeData nd = build_nodes(prob, n);
  GridFunction qp = differentiate(nd.q);
  std::vector<double> raw(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double qq = nd.q0 + nd.q[k];
    raw[k] = qp[k] + qq * qq + nd.u[k];
  }
  GridFunction num(n, std::move(raw));
  GridFunction p = num - integrate(num);
  return {p, nd.c0, transform_bc(prob.bc, nd.q0 + nd.q.front(), nd.q0 + nd.q.back())};
}

std::vector<double> eigenvalues(const SLProblem& prob, int n_max, const SolveOptions& opts) {
  validate_mode_count(prob, n_max);
  const CellPair cp = build_pair(prob, opts);
  const int first = prob.bc.first_index();
  std::vector<double> mu(n_max);
  par::parallel_for(
      n_max, [&](int k) { mu[k] = extrapolated_scalars(cp, first + k).mu; }, opts.threads);
  return mu;
}

ModeSummary forward_modes(const SLProblem& prob, int n_max, const SolveOptions& opts) {
  validate_mode_count(prob, n_max);
  const CellPair cp = build_pair(prob, opts);
  const int first = prob.bc.first_index();
  ModeSummary ms;
  ms.mu.resize(n_max);
  ms.norming.resize(n_max);
  par::parallel_for(
      n_max,
      [&](int k) {
        ModeScalars s = extrapolated_scalars(cp, first + k);
        ms.mu[k] = s.mu;
        ms.norming[k] = s.norming;
      },
      opts.threads);
  return ms;
}

namespace {

EigenResult build_eigenresult(const CellPair& cp, int index) {
  ModeScalars scal = extrapolated_scalars(cp, index);
  const ShootCells& sc = cp.fine;
  const double sigma = scal.mu - sc.c0;
  const Seed seed = seed_for(sc.bcp);
  std::vector<double> yu, yls;
  propagate(sc, sigma, seed.u0, seed.du0, &yu, &yls);

  const int n = static_cast<int>(sc.pbar.size());
  double ls_max = 0.0;
  for (double v : yls) ls_max = std::max(ls_max, v);
  std::vector<double> f(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double y = yu[k] * std::exp(yls[k] - ls_max);
    f[k] = y / (sc.nodes.rho0 * std::exp(sc.nodes.Q[k]));
  }
  GridFunction ff(n, std::move(f));
  // unit norm in L^2(r^m dx)
  std::vector<double> wsq(n + 1);
  for (int k = 0; k <= n; ++k) wsq[k] = ff[k] * ff[k] * sc.nodes.rho2[k];
  const double nrm = std::sqrt(integrate(GridFunction(n, std::move(wsq))));
  ff = (1.0 / nrm) * ff;
  // sign convention: f'(0) > 0 for Dirichlet/Mixed, f(0) > 0 for Robin
  const bool use_value = sc.bcp.type == BoundaryCondition::Type::Robin;
  const double lead = use_value ? ff.front() : (ff[1] - ff.front());
  if (lead < 0.0) ff = -1.0 * ff;
  return {index, scal.mu, ff, scal.norming};
}

}  // namespace

EigenResult eigenfunction(const SLProblem& prob, int n, const SolveOptions& opts) {
  prob.profile.validate();
  const int first = prob.bc.first_index();
  if (n < first || n >= first + 200)
    throw std::invalid_argument("eigenfunction: index out of range for this bc");
  const CellPair cp = build_pair(prob, opts);
  return build_eigenresult(cp, n);
}

double norming_constant(const SLProblem& prob, int n, const SolveOptions& opts) {
  prob.profile.validate();
  const int first = prob.bc.first_index();
  if (n < first || n >= first + 200)
    throw std::invalid_argument("norming_constant: index out of range for this bc");
  const CellPair cp = build_pair(prob, opts);
  return extrapolated_scalars(cp, n).norming;
}

std::vector<EigenResult> solve_modes(const SLProblem& prob, int n_max, const SolveOptions& opts) {
  validate_mode_count(prob, n_max);
  const CellPair cp = build_pair(prob, opts);
  const int first = prob.bc.first_index();
  std::vector<EigenResult> out(n_max, EigenResult{0, 0.0, GridFunction::zeros(8), 0.0});
  par::parallel_for(
      n_max, [&](int k) { out[k] = build_eigenresult(cp, first + k); }, opts.threads);
  return out;
}

namespace {

// Symmetric tridiagonal eigenvalues below index n_max by Sturm bisection.
int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
  int count = 0;
  double t = d[0] - x;
  if (t < 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    double denom = t;
    if (denom == 0.0) denom = 1e-300;
    t = d[i] - x - e[i - 1] * e[i - 1] / denom;
    if (t < 0.0) ++count;
  }
  return count;
}

double tridiag_eigenvalue(const std::vector<double>& d, const std::vector<double>& e, int k) {
  double lo = d[0], hi = d[0];
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double left = i > 0 ? std::abs(e[i - 1]) : 0.0;
    const double right = i < e.size() ? std::abs(e[i]) : 0.0;
    lo = std::min(lo, d[i] - left - right);
    hi = std::max(hi, d[i] + left + right);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (sturm_count(d, e, mid) <= k)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

// Lumped-P1 discretization of the weighted form on the measure r^m dx,
// symmetrized by the diagonal mass scaling.
std::vector<double> weighted_fd_eigs(const SLProblem& prob, int ngrid, int n_max, int threads) {
  NodeData nd = build_nodes(prob, ngrid);
  const double h = 1.0 / ngrid;
  std::vector<double> rho2_half(ngrid);
  for (int k = 0; k < ngrid; ++k) rho2_half[k] = 0.5 * (nd.rho2[k] + nd.rho2[k + 1]);

  std::vector<double> diag(ngrid + 1), mass(ngrid + 1);
  for (int k = 0; k <= ngrid; ++k) {
    const double wk = (k == 0 || k == ngrid) ? h / 2.0 : h;
    double kk = 0.0;
    if (k > 0) kk += rho2_half[k - 1] / h;
    if (k < ngrid) kk += rho2_half[k] / h;
    diag[k] = kk + wk * nd.rho2[k] * nd.u[k];
    mass[k] = wk * nd.rho2[k];
  }
  int lo_node = 0, hi_node = ngrid;
  switch (prob.bc.type) {
    case BoundaryCondition::Type::Dirichlet:
      lo_node = 1;
      hi_node = ngrid - 1;
      break;
    case BoundaryCondition::Type::Mixed:
      lo_node = 1;
      diag[ngrid] += nd.rho2[ngrid] * prob.bc.b;
      break;
    case BoundaryCondition::Type::Robin:
      diag[0] += nd.rho2[0] * prob.bc.a;
      diag[ngrid] += nd.rho2[ngrid] * prob.bc.b;
      break;
  }
  const int dim = hi_node - lo_node + 1;
  std::vector<double> d(dim), e(dim - 1);
  for (int i = 0; i < dim; ++i) d[i] = diag[lo_node + i] / mass[lo_node + i];
  for (int i = 0; i + 1 < dim; ++i)
    e[i] = -rho2_half[lo_node + i] / h / std::sqrt(mass[lo_node + i] * mass[lo_node + i + 1]);

  std::vector<double> ev(n_max);
  par::parallel_for(
      n_max, [&](int k) { ev[k] = tridiag_eigenvalue(d, e, k); }, threads);
  return ev;
}

}  // namespace

std::vector<double> oracle_matrix_eigen(const SLProblem& prob, int n_grid, int n_max,
                                        int threads) {
  validate_mode_count(prob, n_max);
  if (n_grid < 16 || n_grid > 4000 || n_grid % 2 != 0)
    throw std::invalid_argument("oracle_matrix_eigen: n_grid must be even, in [16, 4000]");
  std::vector<double> fine = weighted_fd_eigs(prob, n_grid, n_max, threads);
  std::vector<double> coarse = weighted_fd_eigs(prob, n_grid / 2, n_max, threads);
  std::vector<double> out(n_max);
  for (int k = 0; k < n_max; ++k) out[k] = (4.0 * fine[k] - coarse[k]) / 3.0;
  return out;
}

}  // namespace revspec
