#pragma once

// Analytic sine-sum test family. Values, derivatives and antiderivatives are
// closed-form, which keeps the oracles in these tests independent of the
// library's finite-difference and quadrature paths.

#include <cmath>
#include <random>
#include <vector>

#include "revspec/grid_function.hpp"

namespace revspec::testsupport {

struct TrigPoly {
  std::vector<double> coeffs;  // a_j on sin(j pi x), j = 1..size

  double operator()(double x) const {
    double s = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) s += coeffs[j] * std::sin((j + 1) * M_PI * x);
    return s;
  }
  double derivative(double x) const {
    double s = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      const double w = (j + 1) * M_PI;
      s += coeffs[j] * w * std::cos(w * x);
    }
    return s;
  }
  double integral(double x) const {  // from 0
    double s = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      const double w = (j + 1) * M_PI;
      s += coeffs[j] * (1.0 - std::cos(w * x)) / w;
    }
    return s;
  }
  double w10_norm() const {
    double s = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      const double w = (j + 1) * M_PI;
      s += coeffs[j] * coeffs[j] * w * w / 2.0;
    }
    return std::sqrt(s);
  }
  GridFunction sample(int n) const {
    return GridFunction::sample(n, [this](double x) { return (*this)(x); });
  }
  GridFunction sample_derivative(int n) const {
    return GridFunction::sample(n, [this](double x) { return derivative(x); });
  }
};

inline TrigPoly random_w10(std::mt19937& rng, int terms, double target_norm) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  TrigPoly t;
  t.coeffs.resize(terms);
  for (int j = 0; j < terms; ++j) t.coeffs[j] = gauss(rng) / ((j + 1.0) * (j + 1.0));
  const double nrm = t.w10_norm();
  for (double& c : t.coeffs) c *= target_norm / nrm;
  return t;
}

}  // namespace revspec::testsupport
