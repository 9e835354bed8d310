#pragma once

#include <vector>

namespace revspec {

/// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson limited
/// slopes). Used to invert the strictly monotone arclength tables t(x) and
/// x(t) without overshoot.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> xs, std::vector<double> ys);
  double operator()(double x) const;

 private:
  std::vector<double> xs_, ys_, d_;
};

/// Plain cubic Hermite interpolant with central-difference slopes, for
/// resampling non-monotone data.
class CubicInterp {
 public:
  CubicInterp(std::vector<double> xs, std::vector<double> ys);
  double operator()(double x) const;

 private:
  std::vector<double> xs_, ys_, d_;
};

}  // namespace revspec
