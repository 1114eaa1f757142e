#pragma once

// Small dense linear algebra: eigenvalues of general matrices, cubic roots,
// characteristic polynomials, Routh-Hurwitz and the continuous Lyapunov
// equation. Everything here is a pure function of its inputs.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "ptmcom/errors.hpp"

namespace ptmcom {

using Complex = std::complex<double>;

/// Eigenvalues and roots, sorted by real part descending, then imaginary part
/// descending.
using ComplexList = std::vector<Complex>;

using Mat8 = Eigen::Matrix<double, 8, 8>;
using Mat4 = Eigen::Matrix<double, 4, 4>;
using Vec8 = Eigen::Matrix<double, 8, 1>;

inline constexpr Eigen::Index kMaxDenseDimension = 16;

void sort_descending(ComplexList& values);

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* who) {
  if (m.rows() != m.cols())
    throw DimensionError(std::string(who) + ": matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* who) {
  if (!m.allFinite()) throw ArgumentError(std::string(who) + ": non-finite entry");
}

ComplexList eigenvalues_real(const Eigen::MatrixXd& balanced_matrix);
ComplexList eigenvalues_complex(const Eigen::MatrixXcd& balanced_matrix);

}  // namespace detail

/// Parlett-Reinsch balancing by powers of two. The result is similar to the input.
template <typename Derived>
typename Derived::PlainObject balance(const Eigen::MatrixBase<Derived>& m) {
  using std::abs;
  typename Derived::PlainObject b = m;
  const Eigen::Index n = b.rows();
  constexpr double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double col = 0.0;
      double row = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        col += abs(b(j, i));
        row += abs(b(i, j));
      }
      if (col == 0.0 || row == 0.0) continue;
      double g = row / radix;
      double f = 1.0;
      const double s = col + row;
      while (col < g) {
        f *= radix;
        col *= radix * radix;
      }
      g = row * radix;
      while (col >= g) {
        f /= radix;
        col /= radix * radix;
      }
      if ((col + row) / f < 0.95 * s) {
        converged = false;
        b.row(i) /= f;
        b.col(i) *= f;
      }
    }
  }
  return b;
}

/// All n eigenvalues (with multiplicity) of a real or complex square matrix,
/// n <= 16. Balancing, Hessenberg reduction and shifted QR with a cap of
/// 100*n iterations. Throws DimensionError / NumericError.
template <typename Derived>
ComplexList eigenvalues_general(const Eigen::MatrixBase<Derived>& m) {
  detail::require_square(m, "eigenvalues_general");
  if (m.rows() > kMaxDenseDimension)
    throw DimensionError("eigenvalues_general: dimension above 16 is not supported");
  detail::require_finite(m, "eigenvalues_general");
  if (m.rows() == 0) return {};
  if constexpr (Eigen::NumTraits<typename Derived::Scalar>::IsComplex) {
    return detail::eigenvalues_complex(balance(m.template cast<Complex>().eval()));
  } else {
    return detail::eigenvalues_real(balance(m.template cast<double>().eval()));
  }
}

/// Roots of c3 x^3 + c2 x^2 + c1 x + c0. When leading coefficients vanish the
/// polynomial degrades to quadratic or linear and `degree` says so.
struct PolynomialRoots {
  int degree = 0;
  ComplexList roots;  ///< real roots carry an exactly zero imaginary part
};

PolynomialRoots solve_cubic_real(double c3, double c2, double c1, double c0);

/// Evaluates a polynomial given by descending coefficients.
template <typename T>
T polyval(const std::vector<double>& descending, T x) {
  T acc{0};
  for (double c : descending) acc = acc * x + c;
  return acc;
}

/// Coefficients of det(lambda I - m), descending, monic (Faddeev-LeVerrier).
template <typename Derived>
std::vector<double> char_poly(const Eigen::MatrixBase<Derived>& m) {
  detail::require_square(m, "char_poly");
  if (m.rows() > kMaxDenseDimension)
    throw DimensionError("char_poly: dimension above 16 is not supported");
  const Eigen::Index n = m.rows();
  const Eigen::MatrixXd a = m.template cast<double>();
  std::vector<double> coeffs(static_cast<std::size_t>(n) + 1, 0.0);
  coeffs[0] = 1.0;
  Eigen::MatrixXd mk = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = a * mk + coeffs[static_cast<std::size_t>(k - 1)] * id;
    coeffs[static_cast<std::size_t>(k)] = -(a * mk).trace() / static_cast<double>(k);
  }
  return coeffs;
}

struct RouthResult {
  bool stable = false;    ///< every root strictly in the left half-plane
  bool marginal = false;  ///< a zero pivot or zero row was met (epsilon rule applied)
  int sign_changes = 0;   ///< number of right-half-plane roots (after epsilon rule)
};

/// Routh array test on a polynomial with descending coefficients, degree >= 1.
RouthResult routh_hurwitz(const std::vector<double>& descending);

inline bool routh_hurwitz_stable(const std::vector<double>& descending) {
  return routh_hurwitz(descending).stable;
}

/// Kronecker product of two dense matrices.
template <typename A, typename B>
Eigen::Matrix<typename A::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  Eigen::Matrix<typename A::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                                        a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Solves m V + V m^T + d = 0 by vectorizing to (I (x) m + m (x) I) vec V = -vec d
/// and a fully pivoted LU with one step of iterative refinement. The caller
/// guarantees m is Hurwitz; a singular operator throws NoUniqueSolutionError.
template <typename DerivedM, typename DerivedD>
Eigen::Matrix<double, DerivedM::RowsAtCompileTime, DerivedM::ColsAtCompileTime> solve_lyapunov(
    const Eigen::MatrixBase<DerivedM>& m, const Eigen::MatrixBase<DerivedD>& d) {
  detail::require_square(m, "solve_lyapunov");
  detail::require_square(d, "solve_lyapunov");
  if (m.rows() != d.rows()) throw DimensionError("solve_lyapunov: m and d differ in size");
  if (m.rows() > kMaxDenseDimension)
    throw DimensionError("solve_lyapunov: dimension above 16 is not supported");
  const Eigen::Index n = m.rows();
  const Eigen::MatrixXd mm = m.template cast<double>();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd op = kron(id, mm) + kron(mm, id);

  Eigen::VectorXd rhs(n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) rhs(j * n + i) = -static_cast<double>(d(i, j));

  Eigen::FullPivLU<Eigen::MatrixXd> lu(op);
  if (!lu.isInvertible())
    throw NoUniqueSolutionError("solve_lyapunov: vectorized operator is singular");
  Eigen::VectorXd x = lu.solve(rhs);
  x += lu.solve(rhs - op * x);

  Eigen::Matrix<double, DerivedM::RowsAtCompileTime, DerivedM::ColsAtCompileTime> v(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) v(i, j) = x(j * n + i);
  return v;
}

/// Frobenius norm of m V + V m^T + d.
template <typename DM, typename DV, typename DD>
double lyapunov_residual(const Eigen::MatrixBase<DM>& m, const Eigen::MatrixBase<DV>& v,
                         const Eigen::MatrixBase<DD>& d) {
  return (m * v + v * m.transpose() + d).norm();
}

}  // namespace ptmcom
