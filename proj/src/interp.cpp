#include "revspec/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace revspec {

namespace {

// Index of the panel containing x (clamped).
std::size_t locate(const std::vector<double>& xs, double x) {
  if (x <= xs.front()) return 0;
  if (x >= xs.back()) return xs.size() - 2;
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  return static_cast<std::size_t>(it - xs.begin()) - 1;
}

double hermite(double x0, double x1, double y0, double y1, double d0, double d1, double x) {
  const double w = x1 - x0;
  const double t = (x - x0) / w;
  const double t2 = t * t, t3 = t2 * t;
  return y0 * (2 * t3 - 3 * t2 + 1) + w * d0 * (t3 - 2 * t2 + t) + y1 * (-2 * t3 + 3 * t2) +
         w * d1 * (t3 - t2);
}

std::vector<double> central_slopes(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  std::vector<double> d(n);
  d[0] = (ys[1] - ys[0]) / (xs[1] - xs[0]);
  d[n - 1] = (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (ys[i + 1] - ys[i - 1]) / (xs[i + 1] - xs[i - 1]);
  return d;
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size() || xs_.size() < 2)
    throw std::invalid_argument("MonotoneCubic: need matching tables of size >= 2");
  for (std::size_t i = 1; i < xs_.size(); ++i)
    if (!(xs_[i] > xs_[i - 1]))
      throw std::invalid_argument("MonotoneCubic: abscissae must be strictly increasing");
  const std::size_t n = xs_.size();
  std::vector<double> sec(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) sec[i] = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
  d_.assign(n, 0.0);
  d_[0] = sec[0];
  d_[n - 1] = sec[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i)
    d_[i] = (sec[i - 1] * sec[i] > 0.0) ? 0.5 * (sec[i - 1] + sec[i]) : 0.0;
  // Fritsch-Carlson limiter keeps the interpolant monotone on each panel.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (sec[i] == 0.0) {
      d_[i] = d_[i + 1] = 0.0;
      continue;
    }
    const double a = d_[i] / sec[i], b = d_[i + 1] / sec[i];
    const double s = a * a + b * b;
    if (s > 9.0) {
      const double t = 3.0 / std::sqrt(s);
      d_[i] = t * a * sec[i];
      d_[i + 1] = t * b * sec[i];
    }
  }
}

double MonotoneCubic::operator()(double x) const {
  const std::size_t i = locate(xs_, x);
  return hermite(xs_[i], xs_[i + 1], ys_[i], ys_[i + 1], d_[i], d_[i + 1], x);
}

CubicInterp::CubicInterp(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size() || xs_.size() < 2)
    throw std::invalid_argument("CubicInterp: need matching tables of size >= 2");
  for (std::size_t i = 1; i < xs_.size(); ++i)
    if (!(xs_[i] > xs_[i - 1]))
      throw std::invalid_argument("CubicInterp: abscissae must be strictly increasing");
  d_ = central_slopes(xs_, ys_);
}

double CubicInterp::operator()(double x) const {
  const std::size_t i = locate(xs_, x);
  return hermite(xs_[i], xs_[i + 1], ys_[i], ys_[i + 1], d_[i], d_[i + 1], x);
}

}  // namespace revspec
