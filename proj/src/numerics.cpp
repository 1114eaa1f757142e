#include "ptmcom/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <limits>
#include <numbers>

namespace ptmcom {

void sort_descending(ComplexList& values) {
  std::sort(values.begin(), values.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

namespace detail {

ComplexList eigenvalues_real(const Eigen::MatrixXd& balanced_matrix) {
  const auto n = balanced_matrix.rows();
  Eigen::EigenSolver<Eigen::MatrixXd> solver;
  solver.setMaxIterations(static_cast<Eigen::Index>(100 * n));
  solver.compute(balanced_matrix, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericError("eigenvalues_general: QR iteration did not converge within 100*n sweeps");
  ComplexList out(solver.eigenvalues().begin(), solver.eigenvalues().end());
  sort_descending(out);
  return out;
}

ComplexList eigenvalues_complex(const Eigen::MatrixXcd& balanced_matrix) {
  const auto n = balanced_matrix.rows();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
  solver.setMaxIterations(static_cast<Eigen::Index>(100 * n));
  solver.compute(balanced_matrix, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericError("eigenvalues_general: QR iteration did not converge within 100*n sweeps");
  ComplexList out(solver.eigenvalues().begin(), solver.eigenvalues().end());
  sort_descending(out);
  return out;
}

}  // namespace detail

namespace {

constexpr double kFloor = 1e-14;

// One Newton step on the cubic, kept only when it lowers the residual.
template <typename T>
T polish(const std::vector<double>& coeffs, T x) {
  const T p = polyval(coeffs, x);
  T dp{0};
  const std::size_t deg = coeffs.size() - 1;
  for (std::size_t i = 0; i < deg; ++i) dp = dp * x + coeffs[i] * static_cast<double>(deg - i);
  if (std::abs(dp) == 0.0) return x;
  const T y = x - p / dp;
  return std::abs(polyval(coeffs, y)) < std::abs(p) ? y : x;
}

void polish_all(const std::vector<double>& coeffs, ComplexList& roots) {
  for (auto& r : roots) {
    if (r.imag() == 0.0)
      r = Complex(polish(coeffs, r.real()), 0.0);
    else
      r = polish(coeffs, r);
  }
}

// Largest |p(z)| / sum |c_i| |z|^i over the roots.
double backward_error(const std::vector<double>& coeffs, const ComplexList& roots) {
  double worst = 0.0;
  for (const Complex& z : roots) {
    double denom = 0.0;
    for (double c : coeffs) denom = denom * std::abs(z) + std::abs(c);
    const double e = std::abs(polyval(coeffs, z)) / denom;
    worst = std::max(worst, std::isfinite(e) ? e : std::numeric_limits<double>::infinity());
  }
  return worst;
}

ComplexList solve_quadratic(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  if (disc >= 0.0) {
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    const double r1 = q / a;
    const double r2 = q != 0.0 ? c / q : r1;
    return {Complex(r1, 0.0), Complex(r2, 0.0)};
  }
  const double re = -b / (2.0 * a);
  const double im = std::sqrt(-disc) / (2.0 * a);
  return {Complex(re, std::abs(im)), Complex(re, -std::abs(im))};
}

}  // namespace

PolynomialRoots solve_cubic_real(double c3, double c2, double c1, double c0) {
  for (double c : {c3, c2, c1, c0})
    if (!std::isfinite(c)) throw ArgumentError("solve_cubic_real: non-finite coefficient");
  PolynomialRoots out;
  if (c3 == 0.0) {
    if (c2 == 0.0) {
      if (c1 == 0.0) {
        if (c0 == 0.0) throw ArgumentError("solve_cubic_real: all coefficients are zero");
        out.degree = 0;
        return out;
      }
      out.degree = 1;
      out.roots = {Complex(-c0 / c1, 0.0)};
      return out;
    }
    out.degree = 2;
    out.roots = solve_quadratic(c2, c1, c0);
    const std::vector<double> coeffs{c2, c1, c0};
    for (auto& r : out.roots) {
      if (r.imag() == 0.0)
        r = Complex(polish(coeffs, r.real()), 0.0);
      else
        r = polish(coeffs, r);
    }
    sort_descending(out.roots);
    return out;
  }

  out.degree = 3;
  const double a = c2 / c3;
  const double b = c1 / c3;
  const double c = c0 / c3;
  const double shift = a / 3.0;
  // Depressed cubic t^3 + p t + q with x = t - a/3.
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = 0.25 * q * q + p * p * p / 27.0;
  const double scale = std::max({std::abs(a) * std::abs(a), std::abs(b), kFloor});

  if (std::abs(p) <= std::numeric_limits<double>::epsilon() * scale &&
      std::abs(q) <= std::numeric_limits<double>::epsilon() * scale * std::sqrt(scale)) {
    out.roots.assign(3, Complex(-shift, 0.0));
  } else if (disc < 0.0) {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const double t = r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
      out.roots.emplace_back(t - shift, 0.0);
    }
  } else {
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-0.5 * q - std::copysign(sq, q));
    const double v = u != 0.0 ? -p / (3.0 * u) : 0.0;
    const double t1 = u + v;
    const double re = -0.5 * (u + v);
    const double im = 0.5 * std::sqrt(3.0) * std::abs(u - v);
    out.roots.emplace_back(t1 - shift, 0.0);
    if (im == 0.0) {
      out.roots.emplace_back(re - shift, 0.0);
      out.roots.emplace_back(re - shift, 0.0);
    } else {
      out.roots.emplace_back(re - shift, im);
      out.roots.emplace_back(re - shift, -im);
    }
  }

  const std::vector<double> coeffs{c3, c2, c1, c0};
  polish_all(coeffs, out.roots);

  // Cardano loses the small roots when the coefficients are badly scaled.
  // Deflating by each real root in both directions gives alternatives; keep
  // the set with the smallest backward error.
  double best = backward_error(coeffs, out.roots);
  const ComplexList cardano = out.roots;
  for (const Complex& z : cardano) {
    if (z.imag() != 0.0 || best == 0.0) continue;
    const double r = z.real();
    std::vector<std::array<double, 3>> factors;
    const double f1 = c2 + c3 * r;
    factors.push_back({c3, f1, c1 + f1 * r});
    if (r != 0.0) {
      const double b0 = -c0 / r;
      factors.push_back({c3, (b0 - c1) / r, b0});
    }
    for (const auto& f : factors) {
      if (!std::isfinite(f[1]) || !std::isfinite(f[2])) continue;
      ComplexList cand = solve_quadratic(f[0], f[1], f[2]);
      cand.emplace_back(r, 0.0);
      polish_all(coeffs, cand);
      const double e = backward_error(coeffs, cand);
      if (e < best) {
        best = e;
        out.roots = cand;
      }
    }
  }
  sort_descending(out.roots);
  return out;
}

RouthResult routh_hurwitz(const std::vector<double>& descending) {
  if (descending.size() < 2) throw ArgumentError("routh_hurwitz: degree must be at least 1");
  if (descending.front() == 0.0) throw ArgumentError("routh_hurwitz: leading coefficient is zero");
  for (double c : descending)
    if (!std::isfinite(c)) throw ArgumentError("routh_hurwitz: non-finite coefficient");

  // Drift matrices with repeated weakly damped pairs give genuine pivots near
  // 1e-15 of the coefficient scale, so the table is built in 50 digits and only
  // rows that vanish at that precision count as zero.
  using Real = boost::multiprecision::cpp_bin_float_50;
  const Real tol("1e-36");
  const Real floor_value("1e-300");

  const std::size_t n = descending.size() - 1;
  const std::size_t width = n / 2 + 1;
  const double sign = descending.front() > 0.0 ? 1.0 : -1.0;
  std::vector<std::vector<Real>> rows(n + 1, std::vector<Real>(width + 1, Real(0)));
  for (std::size_t k = 0; k <= n; ++k) rows[k % 2][k / 2] = sign * descending[k];

  auto row_scale = [&](std::size_t i) {
    Real s = 0;
    for (const Real& v : rows[i]) s = std::max(s, Real(abs(v)));
    return s;
  };

  RouthResult result;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i >= 2) {
      const Real pivot = rows[i - 1][0];
      for (std::size_t j = 0; j < width; ++j)
        rows[i][j] = (pivot * rows[i - 2][j + 1] - rows[i - 2][0] * rows[i - 1][j + 1]) / pivot;
    }
    const Real reference = std::max(row_scale(i - 1), floor_value);
    if (row_scale(i) <= tol * reference) {
      // Zero row: differentiate the auxiliary polynomial of the row above.
      result.marginal = true;
      const double aux_degree = static_cast<double>(n - (i - 1));
      for (std::size_t j = 0; j < width; ++j)
        rows[i][j] = rows[i - 1][j] * (aux_degree - 2.0 * static_cast<double>(j));
      if (row_scale(i) == 0) rows[i][0] = tol * reference;
    }
    if (abs(rows[i][0]) <= tol * std::max(row_scale(i), reference)) {
      result.marginal = true;
      rows[i][0] = tol * std::max(row_scale(i), reference);
    }
  }

  for (std::size_t i = 1; i <= n; ++i)
    if ((rows[i][0] > 0) != (rows[i - 1][0] > 0)) ++result.sign_changes;
  result.stable = result.sign_changes == 0 && !result.marginal;
  return result;
}

}  // namespace ptmcom
