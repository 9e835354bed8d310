#include "revspec/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace revspec {

using nlohmann::json;

json to_json(const GridFunction& f) {
  return json{{"n", f.n()}, {"values", f.values()}};
}

GridFunction gridfn_from_json(const json& j) {
  if (!j.contains("n") || !j.contains("values"))
    throw std::invalid_argument("GridFunction JSON needs fields n, values");
  return GridFunction(j.at("n").get<int>(), j.at("values").get<std::vector<double>>());
}

json to_json(const SurfaceProfile& p) {
  return json{{"m", p.m}, {"r0", p.r0}, {"q0", p.q0}, {"q", to_json(p.q)}};
}

SurfaceProfile profile_from_json(const json& j) {
  SurfaceProfile p{j.at("m").get<int>(), j.at("r0").get<double>(), j.at("q0").get<double>(),
                   gridfn_from_json(j.at("q"))};
  p.validate();
  return p;
}

json to_json(const BoundaryCondition& bc) {
  switch (bc.type) {
    case BoundaryCondition::Type::Dirichlet: return json{{"type", "dirichlet"}};
    case BoundaryCondition::Type::Mixed: return json{{"type", "mixed"}, {"b", bc.b}};
    case BoundaryCondition::Type::Robin: return json{{"type", "robin"}, {"a", bc.a}, {"b", bc.b}};
  }
  return {};
}

BoundaryCondition bc_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "dirichlet") return BoundaryCondition::dirichlet();
  if (type == "mixed") return BoundaryCondition::mixed(j.at("b").get<double>());
  if (type == "robin")
    return BoundaryCondition::robin(j.at("a").get<double>(), j.at("b").get<double>());
  throw std::invalid_argument("unknown boundary condition type: " + type);
}

json to_json(const SpectralData& d) {
  return json{{"bc", to_json(d.bc)},
              {"mu", d.mu},
              {"tilde_mu", d.tilde_mu},
              {"c0", d.c0},
              {"norming", d.norming}};
}

SpectralData spectral_data_from_json(const json& j) {
  const BoundaryCondition bc = bc_from_json(j.at("bc"));
  const double c0 = j.at("c0").get<double>();
  SpectralData d = decompose(j.at("mu").get<std::vector<double>>(), bc, c0);
  if (j.contains("norming")) d.norming = j.at("norming").get<std::vector<double>>();
  return d;
}

json to_json(const std::vector<EigenResult>& modes) {
  json arr = json::array();
  for (const auto& m : modes)
    arr.push_back(json{{"index", m.index},
                       {"mu", m.mu},
                       {"norming_constant", m.norming_constant},
                       {"eigenfunction", to_json(m.eigenfunction)}});
  return arr;
}

json to_json(const ReconstructionReport& r) {
  return json{{"converged", r.converged},
              {"iterations", r.iterations},
              {"final_residual", r.final_residual},
              {"residual_history", r.residual_history}};
}

json to_json(const RoundtripReport& r) {
  return json{{"w10_error", r.w10_error},
              {"h0_error", r.h0_error},
              {"noise", r.noise_level},
              {"reconstruction", to_json(r.reconstruction)}};
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << j.dump(2) << "\n";
}

void write_gridfn_csv(const std::string& path, const GridFunction& f, double x_lo, double x_hi,
                      const std::string& value_name) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << "x," << value_name << "\n" << std::setprecision(17);
  for (int k = 0; k <= f.n(); ++k)
    out << x_lo + (x_hi - x_lo) * f.x(k) << "," << f[k] << "\n";
}

void write_spectrum_csv(const std::string& path, const SpectralData& d) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << "index,mu,norming_constant\n" << std::setprecision(17);
  for (int k = 0; k < d.size(); ++k) {
    out << d.mode_index(k) << "," << d.mu[k] << ",";
    if (k < static_cast<int>(d.norming.size())) out << d.norming[k];
    out << "\n";
  }
}

namespace {

struct Box {
  double xmin, xmax, ymin, ymax;
};

Box bounds(const std::vector<SvgSeries>& series) {
  Box b{0, 1, 0, 1};
  bool first = true;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (first) {
        b = {s.xs[i], s.xs[i], s.ys[i], s.ys[i]};
        first = false;
      }
      b.xmin = std::min(b.xmin, s.xs[i]);
      b.xmax = std::max(b.xmax, s.xs[i]);
      b.ymin = std::min(b.ymin, s.ys[i]);
      b.ymax = std::max(b.ymax, s.ys[i]);
    }
  if (b.xmax - b.xmin < 1e-12) b.xmax = b.xmin + 1.0;
  if (b.ymax - b.ymin < 1e-12) b.ymax = b.ymin + 1.0;
  return b;
}

}  // namespace

std::string svg_chart(const std::vector<SvgSeries>& series, const std::string& title, int width,
                      int height) {
  const int ml = 60, mr = 15, mt = 30, mb = 40;
  const Box b = bounds(series);
  auto px = [&](double x) { return ml + (x - b.xmin) / (b.xmax - b.xmin) * (width - ml - mr); };
  auto py = [&](double y) {
    return height - mb - (y - b.ymin) / (b.ymax - b.ymin) * (height - mt - mb);
  };
  std::ostringstream os;
  os << std::setprecision(8);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">"
     << title << "</text>\n";
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << width - ml - mr
     << "\" height=\"" << height - mt - mb << "\" fill=\"none\" stroke=\"#999\"/>\n";
  os << "<text x=\"" << ml << "\" y=\"" << height - 8 << "\" font-size=\"11\">" << b.xmin
     << "</text>\n";
  os << "<text x=\"" << width - mr << "\" y=\"" << height - 8
     << "\" text-anchor=\"end\" font-size=\"11\">" << b.xmax << "</text>\n";
  os << "<text x=\"6\" y=\"" << height - mb << "\" font-size=\"11\">" << b.ymin << "</text>\n";
  os << "<text x=\"6\" y=\"" << mt + 10 << "\" font-size=\"11\">" << b.ymax << "</text>\n";
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.xs.size(); ++i)
      os << px(s.xs[i]) << "," << py(s.ys[i]) << " ";
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_svg(const std::string& path, const std::string& svg) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << svg;
}

std::string spectrum_svg(const SpectralData& d) {
  SvgSeries s;
  for (int k = 0; k < d.size(); ++k) {
    s.xs.push_back(d.mode_index(k));
    s.ys.push_back(d.mu[k]);
  }
  return svg_chart({s}, "eigenvalues mu_n");
}

std::string silhouette_svg(const EmbeddedSurface& surf) {
  SvgSeries top, bottom;
  top.color = "#1f77b4";
  bottom.color = "#1f77b4";
  for (int k = 0; k <= surf.f.n(); ++k) {
    const double x = surf.x0 * surf.f.x(k);
    top.xs.push_back(x);
    top.ys.push_back(surf.f[k]);
    bottom.xs.push_back(x);
    bottom.ys.push_back(-surf.f[k]);
  }
  return svg_chart({top, bottom}, "revolution silhouette");
}

}  // namespace revspec
