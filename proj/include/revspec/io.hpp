#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "revspec/inverse.hpp"
#include "revspec/spectral_data.hpp"

namespace revspec {

// JSON schemas:
//   GridFunction    {"n": .., "values": [..]}
//   SurfaceProfile  {"m": .., "r0": .., "q0": .., "q": {..}}
//   BoundaryCondition {"type": "dirichlet"} | {"type": "mixed", "b": ..}
//                     | {"type": "robin", "a": .., "b": ..}
//   SpectralData    {"bc": .., "mu": [..], "tilde_mu": [..], "c0": .., "norming": [..]}

nlohmann::json to_json(const GridFunction& f);
GridFunction gridfn_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SurfaceProfile& p);
SurfaceProfile profile_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BoundaryCondition& bc);
BoundaryCondition bc_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SpectralData& d);
SpectralData spectral_data_from_json(const nlohmann::json& j);

/// Batch export of solved modes: array of
/// {"index", "mu", "norming_constant", "eigenfunction"}.
nlohmann::json to_json(const std::vector<EigenResult>& modes);

nlohmann::json to_json(const ReconstructionReport& r);
nlohmann::json to_json(const RoundtripReport& r);

nlohmann::json load_json(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

/// Two-column CSV "x,value" for a grid function over [x_lo, x_hi].
void write_gridfn_csv(const std::string& path, const GridFunction& f, double x_lo = 0.0,
                      double x_hi = 1.0, const std::string& value_name = "value");

/// "index,mu,norming_constant" rows.
void write_spectrum_csv(const std::string& path, const SpectralData& d);

/// Polyline chart; each series is a vector of (x, y) points.
struct SvgSeries {
  std::vector<double> xs, ys;
  std::string color = "#1f77b4";
};
std::string svg_chart(const std::vector<SvgSeries>& series, const std::string& title,
                      int width = 640, int height = 420);
void write_svg(const std::string& path, const std::string& svg);

/// Spectrum scatter (n vs mu_n).
std::string spectrum_svg(const SpectralData& d);

/// Revolution silhouette: f and -f against x on [0, x0].
std::string silhouette_svg(const EmbeddedSurface& s);

}  // namespace revspec
