#include "revspec/grid_function.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>

#include "revspec/errors.hpp"
#include "revspec/interp.hpp"

namespace revspec {

GridFunction::GridFunction(int n_intervals, std::vector<double> values)
    : n_(n_intervals), values_(std::move(values)) {
  if (n_ < 2) throw std::invalid_argument("GridFunction: n_intervals must be >= 2");
  if (values_.size() != static_cast<std::size_t>(n_) + 1)
    throw std::invalid_argument("GridFunction: expected n_intervals + 1 values");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: non-finite value");
}

GridFunction GridFunction::zeros(int n_intervals) {
  return GridFunction(n_intervals, std::vector<double>(n_intervals + 1, 0.0));
}

GridFunction GridFunction::constant(int n_intervals, double value) {
  return GridFunction(n_intervals, std::vector<double>(n_intervals + 1, value));
}

GridFunction GridFunction::sample(int n_intervals, const std::function<double(double)>& f) {
  std::vector<double> v(n_intervals + 1);
  for (int k = 0; k <= n_intervals; ++k) v[k] = f(static_cast<double>(k) / n_intervals);
  return GridFunction(n_intervals, std::move(v));
}

namespace {

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (a.n() != b.n()) throw std::invalid_argument("grid size mismatch");
}

GridFunction map2(const GridFunction& a, const GridFunction& b, double (*op)(double, double)) {
  require_same_grid(a, b);
  std::vector<double> v(a.n() + 1);
  for (int k = 0; k <= a.n(); ++k) v[k] = op(a[k], b[k]);
  return GridFunction(a.n(), std::move(v));
}

}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  return map2(a, b, [](double x, double y) { return x + y; });
}
GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  return map2(a, b, [](double x, double y) { return x - y; });
}
GridFunction operator*(const GridFunction& a, const GridFunction& b) {
  return map2(a, b, [](double x, double y) { return x * y; });
}
GridFunction operator*(double s, const GridFunction& f) {
  std::vector<double> v(f.n() + 1);
  for (int k = 0; k <= f.n(); ++k) v[k] = s * f[k];
  return GridFunction(f.n(), std::move(v));
}
GridFunction operator+(const GridFunction& f, double c) {
  std::vector<double> v(f.n() + 1);
  for (int k = 0; k <= f.n(); ++k) v[k] = f[k] + c;
  return GridFunction(f.n(), std::move(v));
}
GridFunction operator-(const GridFunction& f, double c) { return f + (-c); }

double integrate(const GridFunction& f) {
  const int n = f.n();
  const double h = f.h();
  double s = 0.0;
  int k = 0;
  for (; k + 2 <= n; k += 2) s += h / 3.0 * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
  if (k < n) s += h / 2.0 * (f[k] + f[k + 1]);  // odd grid: trapezoid on the last panel
  return s;
}

GridFunction antiderivative(const GridFunction& f) {
  const int n = f.n();
  const double h = f.h();
  std::vector<double> F(n + 1, 0.0);
  // Even nodes accumulate the same Simpson pair sums as integrate(); odd
  // nodes use the O(h^4) half-panel rule so the two stay consistent.
  for (int k = 2; k <= n; k += 2) F[k] = F[k - 2] + h / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
  for (int k = 1; k <= n; k += 2) {
    if (k < n)
      F[k] = F[k - 1] + h / 12.0 * (5.0 * f[k - 1] + 8.0 * f[k] - f[k + 1]);
    else
      F[k] = F[k - 1] + h / 2.0 * (f[k - 1] + f[k]);  // matches integrate() on odd grids
  }
  return GridFunction(n, std::move(F));
}

GridFunction differentiate(const GridFunction& f) {
  const int n = f.n();
  if (n < 4) throw std::invalid_argument("differentiate: need n_intervals >= 4");
  const double h = f.h();
  std::vector<double> d(n + 1);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  for (int k = 1; k < n; ++k) d[k] = (f[k + 1] - f[k - 1]) / (2.0 * h);
  d[n] = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / (2.0 * h);
  return GridFunction(n, std::move(d));
}

GridFunction second_derivative(const GridFunction& f) {
  const int n = f.n();
  if (n < 4) throw std::invalid_argument("second_derivative: need n_intervals >= 4");
  const double h2 = f.h() * f.h();
  std::vector<double> d(n + 1);
  d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
  for (int k = 1; k < n; ++k) d[k] = (f[k + 1] - 2.0 * f[k] + f[k - 1]) / h2;
  d[n] = (2.0 * f[n] - 5.0 * f[n - 1] + 4.0 * f[n - 2] - f[n - 3]) / h2;
  return GridFunction(n, std::move(d));
}

namespace {

GridFunction derivative_of_order(const GridFunction& f, int alpha) {
  switch (alpha) {
    case 0: return f;
    case 1: return differentiate(f);
    case 2: return second_derivative(f);
    default:
      throw UnsupportedOrder("derivative order " + std::to_string(alpha) + " (max 2)");
  }
}

}  // namespace

double norm(const GridFunction& f, const SpaceTag& tag) {
  const int alpha = tag.kind == SpaceTag::Kind::L2 ? 0 : tag.alpha;
  GridFunction d = derivative_of_order(f, alpha);
  return std::sqrt(std::max(0.0, integrate(d * d)));
}

MembershipReport check_membership(const GridFunction& f, const SpaceTag& tag, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("check_membership: tol must be positive");
  MembershipReport rep;
  auto fail = [&rep](const std::string& msg) {
    rep.ok = false;
    rep.failures.push_back(msg);
  };
  std::ostringstream os;
  switch (tag.kind) {
    case SpaceTag::Kind::W10:
      if (std::abs(f.front()) > tol) {
        os.str(""); os << "f(0) = " << f.front() << " exceeds tol";
        fail(os.str());
      }
      if (std::abs(f.back()) > tol) {
        os.str(""); os << "f(1) = " << f.back() << " exceeds tol";
        fail(os.str());
      }
      break;
    case SpaceTag::Kind::HAlpha:
      if (tag.alpha > 2) {
        fail("alpha > 2 unsupported");
        break;
      }
      for (int j = 0; j <= tag.alpha; ++j) {
        const double mj = integrate(derivative_of_order(f, j));
        if (std::abs(mj) > tol) {
          os.str(""); os << "integral of f^(" << j << ") = " << mj << " exceeds tol";
          fail(os.str());
        }
      }
      break;
    case SpaceTag::Kind::L2:
      break;
  }
  if (tag.parity != Parity::Any) {
    const double sign = tag.parity == Parity::Even ? 1.0 : -1.0;
    double defect = 0.0;
    for (int k = 0; k <= f.n(); ++k)
      defect = std::max(defect, std::abs(f[k] - sign * f[f.n() - k]));
    if (defect > tol) {
      os.str("");
      os << (tag.parity == Parity::Even ? "even" : "odd") << " parity defect " << defect;
      fail(os.str());
    }
  }
  return rep;
}

GridFunction project_parity(const GridFunction& f, Parity parity) {
  if (parity == Parity::Any) return f;
  const double sign = parity == Parity::Even ? 1.0 : -1.0;
  std::vector<double> v(f.n() + 1);
  for (int k = 0; k <= f.n(); ++k) v[k] = 0.5 * (f[k] + sign * f[f.n() - k]);
  return GridFunction(f.n(), std::move(v));
}

GridFunction resample(const GridFunction& f, int new_n) {
  if (new_n == f.n()) return f;
  if (f.n() % new_n == 0) {  // exact restriction
    const int stride = f.n() / new_n;
    std::vector<double> v(new_n + 1);
    for (int k = 0; k <= new_n; ++k) v[k] = f[k * stride];
    return GridFunction(new_n, std::move(v));
  }
  std::vector<double> xs(f.n() + 1), ys(f.values());
  for (int k = 0; k <= f.n(); ++k) xs[k] = f.x(k);
  CubicInterp ci(std::move(xs), std::move(ys));
  std::vector<double> v(new_n + 1);
  for (int k = 0; k <= new_n; ++k) v[k] = ci(static_cast<double>(k) / new_n);
  return GridFunction(new_n, std::move(v));
}

int count_sign_changes(const GridFunction& f, double tol) {
  int changes = 0;
  double prev = 0.0;
  for (int k = 1; k < f.n(); ++k) {  // interior nodes only
    const double v = f[k];
    if (std::abs(v) <= tol) continue;
    if (prev != 0.0 && v * prev < 0.0) ++changes;
    prev = v;
  }
  return changes;
}

}  // namespace revspec
