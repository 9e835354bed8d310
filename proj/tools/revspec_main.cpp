// Batch CLI for the rotational-surface spectral toolkit: forward spectra,
// inverse reconstruction, curvature mapping, the Schrodinger transform,
// the b-identity check, embedding recovery and round-trip reports.
#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "revspec/errors.hpp"
#include "revspec/inverse.hpp"
#include "revspec/io.hpp"

namespace {

using namespace revspec;

std::string with_ext(const std::string& path, const std::string& ext) {
  const std::size_t dot = path.find_last_of('.');
  const std::size_t slash = path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ext;
  return path.substr(0, dot) + ext;
}

struct BcFlags {
  std::string bc = "dirichlet";
  double a = 0.0;
  double b = 0.0;

  BoundaryCondition make() const {
    if (bc == "dirichlet") return BoundaryCondition::dirichlet();
    if (bc == "mixed") return BoundaryCondition::mixed(b);
    if (bc == "robin") return BoundaryCondition::robin(a, b);
    throw std::invalid_argument("unknown --bc value: " + bc);
  }
};

void add_bc_flags(CLI::App* cmd, BcFlags& f) {
  cmd->add_option("--bc", f.bc, "boundary condition: dirichlet|mixed|robin")
      ->check(CLI::IsMember({"dirichlet", "mixed", "robin"}));
  cmd->add_option("--a", f.a, "Robin parameter a at x=0");
  cmd->add_option("--b", f.b, "Mixed/Robin parameter b at x=1");
}

int run_forward(const std::string& input, const BcFlags& bcf, double E, int modes, int grid,
                const std::string& out) {
  SurfaceProfile profile = profile_from_json(load_json(input));
  SLProblem prob{profile, E, bcf.make()};
  SolveOptions opts{grid, true, 0};
  ModeSummary fw = forward_modes(prob, modes, opts);
  SpectralData data = decompose(fw.mu, fw.norming, prob.bc, c0_from_profile(profile, E));
  save_json(out, to_json(data));
  write_spectrum_csv(with_ext(out, ".csv"), data);
  write_svg(with_ext(out, ".svg"), spectrum_svg(data));
  std::cout << "forward: " << modes << " " << prob.bc.name() << " modes, mu_1st = " << data.mu[0]
            << ", c0 = " << data.c0 << " -> " << out << "\n";
  return 0;
}

int run_inverse(const std::string& input, double q0, double E, int m, int modes, int basis,
                int grid, double tol, const std::string& anchor, double r0, double r1,
                const std::string& out) {
  SpectralData data = spectral_data_from_json(load_json(input));
  FixedParams fixed{q0, E, m, data.bc};
  InverseConfig cfg;
  cfg.n_modes = modes;
  cfg.m_basis = basis;
  cfg.grid_n = grid;
  cfg.tol = tol;
  Reconstruction rec = reconstruct_q(data, fixed, cfg);

  Anchors anchors = anchor == "r1" ? Anchors::with_r1(r0, r1) : Anchors::with_q0(r0, q0);
  SurfaceReconstruction sr = reconstruct_surface(rec.q, anchors, m);
  save_json(out, to_json(sr.profile));
  save_json(with_ext(out, ".report.json"), to_json(rec.report));
  write_svg(with_ext(out, ".svg"), silhouette_svg(sr.surface));
  std::cout << "inverse: residual " << rec.report.final_residual << " after "
            << rec.report.iterations << " iterations, x0 = " << sr.surface.x0 << " -> " << out
            << "\n";
  return 0;
}

int run_curvature_map(const std::string& input, const std::string& out) {
  SurfaceProfile profile = profile_from_json(load_json(input));
  CurvatureMap cm = curvature_map_G(profile.q, profile.q0);
  nlohmann::json j{{"xi", to_json(cm.xi)}, {"K0", cm.k0}, {"q0", profile.q0}};
  save_json(out, j);
  std::cout << "curvature-map: K0 = " << cm.k0 << " -> " << out << "\n";
  return 0;
}

int run_curvature_invert(const std::string& input, double q0, const std::string& out) {
  nlohmann::json j = load_json(input);
  GridFunction xi = j.contains("xi") ? gridfn_from_json(j.at("xi")) : gridfn_from_json(j);
  if (j.contains("q0")) q0 = j.at("q0").get<double>();
  GridFunction q = curvature_invert(xi, q0);
  CurvatureMap back = curvature_map_G(q, q0);
  save_json(out, nlohmann::json{{"q", to_json(q)}, {"q0", q0}, {"K0", back.k0}});
  std::cout << "curvature-invert: recovered q with K0 = " << back.k0 << " -> " << out << "\n";
  return 0;
}

int run_transform(const std::string& input, const BcFlags& bcf, double E,
                  const std::string& out) {
  SurfaceProfile profile = profile_from_json(load_json(input));
  SLProblem prob{profile, E, bcf.make()};
  SchrodingerForm sf = to_schrodinger(prob);
  save_json(out, nlohmann::json{{"p", to_json(sf.p)}, {"c0", sf.c0}, {"bc", to_json(sf.bc)}});
  std::cout << "transform: c0 = " << sf.c0 << ", bc' = " << sf.bc.name() << " -> " << out << "\n";
  return 0;
}

int run_verify_b(const std::string& input, int terms, const std::string& out) {
  SpectralData data = spectral_data_from_json(load_json(input));
  const int n = terms > 0 ? std::min(terms, data.size()) : data.size();
  BEstimate est = b_from_identity(data, n);
  std::cout << "verify-b: estimate " << est.estimate << " from " << n << " terms (last term "
            << est.last_term << "), supplied b = " << data.bc.b
            << ", difference = " << est.estimate - data.bc.b << "\n";
  if (!out.empty())
    save_json(out, nlohmann::json{{"estimate", est.estimate},
                                  {"last_term", est.last_term},
                                  {"terms", n},
                                  {"supplied_b", data.bc.b}});
  return 0;
}

int run_embed(const std::string& input, double t0, const std::string& out) {
  GridFunction r = gridfn_from_json(load_json(input));
  EmbeddedSurface s = recover_embedding(r, t0);
  write_gridfn_csv(out, s.f, 0.0, s.x0, "f");
  std::cout << "embed: x0 = " << s.x0 << " -> " << out << "\n";
  return 0;
}

int run_roundtrip(const std::string& input, const BcFlags& bcf, double E, int modes, int basis,
                  int grid, double tol, double noise, unsigned seed, const std::string& out) {
  SurfaceProfile profile = profile_from_json(load_json(input));
  FixedParams fixed{profile.q0, E, profile.m, bcf.make()};
  InverseConfig cfg;
  cfg.n_modes = modes;
  cfg.m_basis = basis;
  cfg.grid_n = grid;
  cfg.tol = tol;
  RoundtripReport rep = roundtrip_report(profile.q, fixed, cfg, noise, seed);
  save_json(out, to_json(rep));
  std::cout << "roundtrip: H0 error " << rep.h0_error << ", W10 error " << rep.w10_error
            << " -> " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral toolkit for rotationally symmetric manifolds"};
  app.require_subcommand(1);

  std::string input, out = "out.json", anchor = "q0";
  BcFlags bcf;
  double E = 0.0, q0 = 0.0, tol = 1e-4, noise = 0.0, r0 = 1.0, r1 = 1.0, t0 = 1.0;
  int modes = 16, basis = 12, grid = 800, m = 1, terms = 0;
  unsigned seed = 1;

  auto* fwd = app.add_subcommand("forward", "profile -> eigenvalues + norming constants");
  fwd->add_option("input", input, "SurfaceProfile JSON")->required();
  add_bc_flags(fwd, bcf);
  fwd->add_option("--E", E, "cross-section eigenvalue E_nu");
  fwd->add_option("--modes", modes, "number of modes");
  fwd->add_option("--grid", grid, "solver grid intervals");
  fwd->add_option("--out", out, "output JSON path");

  auto* inv = app.add_subcommand("inverse", "spectral data -> profile + surface");
  inv->add_option("input", input, "SpectralData JSON")->required();
  inv->add_option("--q0", q0, "fixed q0 (also the default anchor)");
  inv->add_option("--E", E, "cross-section eigenvalue E_nu");
  inv->add_option("--m", m, "cross-section dimension");
  inv->add_option("--modes", modes, "data truncation N");
  inv->add_option("--basis", basis, "sine basis size M");
  inv->add_option("--grid", grid, "solver grid intervals");
  inv->add_option("--tol", tol, "Gauss-Newton residual tolerance");
  inv->add_option("--anchor", anchor, "r anchoring: q0 | r1")
      ->check(CLI::IsMember({"q0", "r1"}));
  inv->add_option("--r0", r0, "r(0)");
  inv->add_option("--r1", r1, "r(1) (with --anchor r1)");
  inv->add_option("--out", out, "output JSON path");

  auto* cmap = app.add_subcommand("curvature-map", "profile -> curvature data (xi, K0)");
  cmap->add_option("input", input, "SurfaceProfile JSON")->required();
  cmap->add_option("--out", out, "output JSON path");

  auto* cinv = app.add_subcommand("curvature-invert", "curvature data -> q");
  cinv->add_option("input", input, "JSON with xi (or bare GridFunction)")->required();
  cinv->add_option("--q0", q0, "q0 (overridden by the input file when present)");
  cinv->add_option("--out", out, "output JSON path");

  auto* tr = app.add_subcommand("transform", "profile -> Schrodinger form (p, c0, bc')");
  tr->add_option("input", input, "SurfaceProfile JSON")->required();
  add_bc_flags(tr, bcf);
  tr->add_option("--E", E, "cross-section eigenvalue E_nu");
  tr->add_option("--out", out, "output JSON path");

  std::string vb_out;
  auto* vb = app.add_subcommand("verify-b", "Mixed data -> b estimate from the trace identity");
  vb->add_option("input", input, "SpectralData JSON (mixed)")->required();
  vb->add_option("--terms", terms, "number of terms (default: all modes)");
  vb->add_option("--out", vb_out, "optional JSON report path");

  auto* em = app.add_subcommand("embed", "r(t) -> profile curve (x, f(x)) CSV");
  em->add_option("input", input, "GridFunction JSON of r(t)")->required();
  em->add_option("--t0", t0, "length of the t interval");
  em->add_option("--out", out, "output CSV path");

  auto* rt = app.add_subcommand("roundtrip", "forward + reconstruct + error report");
  rt->add_option("input", input, "SurfaceProfile JSON")->required();
  add_bc_flags(rt, bcf);
  rt->add_option("--E", E, "cross-section eigenvalue E_nu");
  rt->add_option("--modes", modes, "data truncation N");
  rt->add_option("--basis", basis, "sine basis size M");
  rt->add_option("--grid", grid, "solver grid intervals");
  rt->add_option("--tol", tol, "Gauss-Newton residual tolerance");
  rt->add_option("--noise", noise, "relative data noise eta");
  rt->add_option("--seed", seed, "noise seed");
  rt->add_option("--out", out, "output JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(fwd)) return run_forward(input, bcf, E, modes, grid, out);
    if (app.got_subcommand(inv))
      return run_inverse(input, q0, E, m, modes, basis, grid, tol, anchor, r0, r1, out);
    if (app.got_subcommand(cmap)) return run_curvature_map(input, out);
    if (app.got_subcommand(cinv)) return run_curvature_invert(input, q0, out);
    if (app.got_subcommand(tr)) return run_transform(input, bcf, E, out);
    if (app.got_subcommand(vb)) return run_verify_b(input, terms, vb_out);
    if (app.got_subcommand(em)) return run_embed(input, t0, out);
    if (app.got_subcommand(rt))
      return run_roundtrip(input, bcf, E, modes, basis, grid, tol, noise, seed, out);
  } catch (const NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SolverStall& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
