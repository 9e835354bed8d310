#pragma once

#include <functional>
#include <string>
#include <vector>

namespace revspec {

/// A real function on [0,1] sampled at the n+1 nodes x_k = k/n of a uniform
/// grid. This is the universal carrier for q, Q, p, r, rho, eigenfunctions.
/// Values are validated (finite, n >= 2) on construction and immutable
/// afterwards, so instances can be shared freely across threads.
class GridFunction {
 public:
  GridFunction(int n_intervals, std::vector<double> values);

  static GridFunction zeros(int n_intervals);
  static GridFunction constant(int n_intervals, double value);
  static GridFunction sample(int n_intervals, const std::function<double(double)>& f);

  int n() const { return n_; }
  double h() const { return 1.0 / n_; }
  double x(int k) const { return static_cast<double>(k) / n_; }
  double operator[](int k) const { return values_[static_cast<std::size_t>(k)]; }
  const std::vector<double>& values() const { return values_; }

  double front() const { return values_.front(); }
  double back() const { return values_.back(); }

 private:
  int n_;
  std::vector<double> values_;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double s, const GridFunction& f);
GridFunction operator+(const GridFunction& f, double c);
GridFunction operator-(const GridFunction& f, double c);

/// Composite Simpson approximation of the integral over [0,1]; falls back to
/// a trapezoid on the last panel when n is odd. O(h^4) for smooth f.
double integrate(const GridFunction& f);

/// Cumulative integral F with F(0) = 0. Prefix values at even nodes coincide
/// bit-for-bit with the composite Simpson sums used by integrate(), so
/// F(1) == integrate(f) on even grids.
GridFunction antiderivative(const GridFunction& f);

/// Central differences in the interior, second-order one-sided stencils at
/// the endpoints. Requires n >= 4.
GridFunction differentiate(const GridFunction& f);

/// Second derivative by 3-point central stencils (4-point one-sided at the
/// endpoints). Requires n >= 4.
GridFunction second_derivative(const GridFunction& f);

enum class Parity { Any, Even, Odd };

/// Tag for the function spaces used throughout: W10 (H^1 with zero boundary
/// values), H_alpha (alpha-th derivative in L^2, zero means of derivatives
/// up to order alpha), and plain L2; optionally restricted to the even or
/// odd subspace about x = 1/2.
struct SpaceTag {
  enum class Kind { W10, HAlpha, L2 };
  Kind kind = Kind::L2;
  int alpha = 0;
  Parity parity = Parity::Any;

  static SpaceTag w10(Parity p = Parity::Any) { return {Kind::W10, 1, p}; }
  static SpaceTag h_alpha(int a, Parity p = Parity::Any) { return {Kind::HAlpha, a, p}; }
  static SpaceTag l2(Parity p = Parity::Any) { return {Kind::L2, 0, p}; }
};

/// Norm associated with a space tag: the L^2 norm of the alpha-th derivative
/// (alpha = 1 for W10, 0 for L2). Throws UnsupportedOrder for alpha > 2.
double norm(const GridFunction& f, const SpaceTag& tag);

struct MembershipReport {
  bool ok = true;
  std::vector<std::string> failures;
  explicit operator bool() const { return ok; }
};

/// Tolerance-based membership test. W10 checks |f(0)|, |f(1)| <= tol;
/// H_alpha checks |integral of f^(j)| <= tol for j = 0..alpha; a parity
/// request checks max_k |f(x_k) -+ f(1-x_k)| <= tol. Failures are reported,
/// never thrown.
MembershipReport check_membership(const GridFunction& f, const SpaceTag& tag, double tol);

/// (f(x) + f(1-x))/2 resp. (f(x) - f(1-x))/2; the two parts add back to f
/// exactly at every node. Parity::Any returns f unchanged.
GridFunction project_parity(const GridFunction& f, Parity parity);

/// Resample onto a grid with new_n intervals by cubic Hermite interpolation
/// (finite-difference slopes). Exact when new_n divides n.
GridFunction resample(const GridFunction& f, int new_n);

/// Number of strict sign changes over interior nodes, ignoring |f| below tol.
int count_sign_changes(const GridFunction& f, double tol = 0.0);

}  // namespace revspec
