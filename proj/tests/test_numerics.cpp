#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ptmcom/model.hpp"
#include "ptmcom/numerics.hpp"
#include "ptmcom/params.hpp"

using namespace ptmcom;

namespace {

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

double scale_of(const std::vector<double>& c) {
  double s = 0.0;
  for (double v : c) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("eigenvalues of small fixed matrices") {
  Eigen::Matrix2d d;
  d << -1, 0, 0, -2;
  auto ev = eigenvalues_general(d);
  REQUIRE(ev.size() == 2);
  CHECK(close(ev[0], -1.0, 1e-14));
  CHECK(close(ev[1], -2.0, 1e-14));

  Eigen::Matrix2d rot;
  rot << 0, 1, -1, 0;
  ev = eigenvalues_general(rot);
  CHECK(close(ev[0], Complex(0, 1), 1e-14));
  CHECK(close(ev[1], Complex(0, -1), 1e-14));
}

TEST_CASE("eigenvalues are sorted by real then imaginary part, descending") {
  Eigen::Matrix3d m;
  m << 1, 0, 0, 0, 1, -2, 0, 2, 1;
  const auto ev = eigenvalues_general(m);
  CHECK(ev[0].imag() == doctest::Approx(2.0));
  CHECK(ev[1].real() == doctest::Approx(1.0));
  CHECK(ev[2].imag() == doctest::Approx(-2.0));
}

TEST_CASE("complex two-mode generator matches its trace/determinant roots") {
  Eigen::Matrix2cd m;
  const Complex i(0, 1);
  m << -i * 1.0 - 1.0, -i * 0.6, -i * 0.2, -i * 1.0 + 0.1;
  const auto ev = eigenvalues_general(m);
  const auto [l1, l2] = oracle::eig2(m);
  const bool direct = close(ev[0], l1, 1e-12) && close(ev[1], l2, 1e-12);
  const bool swapped = close(ev[0], l2, 1e-12) && close(ev[1], l1, 1e-12);
  CHECK((direct || swapped));
}

TEST_CASE("eigensolver rejects bad shapes and sizes") {
  Eigen::MatrixXd rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(eigenvalues_general(rect), DimensionError);
  Eigen::MatrixXd big = Eigen::MatrixXd::Identity(17, 17);
  CHECK_THROWS_AS(eigenvalues_general(big), DimensionError);
  Eigen::Matrix2d bad;
  bad << 1, std::nan(""), 0, 1;
  CHECK_THROWS_AS(eigenvalues_general(bad), ArgumentError);
}

TEST_CASE("eigenvalue completeness: trace, determinant and reconstruction") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 7;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = nd(rng);
    const auto ev = eigenvalues_general(m);
    REQUIRE(ev.size() == static_cast<std::size_t>(n));
    Complex sum = 0.0, prod = 1.0;
    for (auto l : ev) {
      sum += l;
      prod *= l;
    }
    const double norm = m.norm();
    CHECK(std::abs(sum - m.trace()) <= 1e-9 * norm);
    const double det = m.determinant();
    CHECK(std::abs(prod - det) <= 1e-7 * std::max(1.0, std::abs(det)));
    for (auto l : ev) {
      // smallest singular value of (m - l I) vanishes at an eigenvalue
      const Eigen::MatrixXcd shifted =
          m.cast<Complex>() - l * Eigen::MatrixXcd::Identity(n, n);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
      CHECK(svd.singularValues()(n - 1) <= 1e-8 * norm);
    }
  }
}

TEST_CASE("balancing preserves the spectrum of a badly scaled matrix") {
  Eigen::Matrix3d m;
  m << 1, 1e6, 0, 1e-6, 2, 1e5, 0, 1e-5, 3;
  const auto b = balance(m);
  CHECK(b.trace() == doctest::Approx(m.trace()));
  CHECK(b.determinant() == doctest::Approx(m.determinant()));
  CHECK(b.norm() < m.norm());
}

TEST_CASE("cubic: factored, triple and repeated roots") {
  auto r = solve_cubic_real(1, -6, 11, -6);
  REQUIRE(r.degree == 3);
  REQUIRE(r.roots.size() == 3);
  CHECK(r.roots[0].real() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(r.roots[1].real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.roots[2].real() == doctest::Approx(1.0).epsilon(1e-14));
  for (auto z : r.roots) CHECK(z.imag() == 0.0);

  r = solve_cubic_real(1, 0, 0, 0);
  REQUIRE(r.roots.size() == 3);
  for (auto z : r.roots) CHECK(std::abs(z) == 0.0);

  r = solve_cubic_real(1, -3, 3, -1);
  REQUIRE(r.roots.size() == 3);
  for (auto z : r.roots) CHECK(std::abs(z - 1.0) < 1e-12);

  r = solve_cubic_real(2, -4, 2, 0);  // 2x(x-1)^2
  REQUIRE(r.roots.size() == 3);
  CHECK(std::abs(r.roots[0] - 1.0) < 1e-7);
  CHECK(std::abs(r.roots[2]) < 1e-12);
}

TEST_CASE("cubic degrades to quadratic and linear") {
  auto r = solve_cubic_real(0, 1, 0, -4);
  CHECK(r.degree == 2);
  REQUIRE(r.roots.size() == 2);
  CHECK(r.roots[0].real() == doctest::Approx(2.0));
  CHECK(r.roots[1].real() == doctest::Approx(-2.0));

  r = solve_cubic_real(0, 1, 0, 4);
  REQUIRE(r.roots.size() == 2);
  CHECK(std::abs(r.roots[0] - Complex(0, 2)) < 1e-14);

  r = solve_cubic_real(0, 0, 2, -1);
  CHECK(r.degree == 1);
  REQUIRE(r.roots.size() == 1);
  CHECK(r.roots[0].real() == doctest::Approx(0.5));

  CHECK_THROWS_AS(solve_cubic_real(0, 0, 0, 0), ArgumentError);
  r = solve_cubic_real(0, 0, 0, 3);
  CHECK(r.degree == 0);
  CHECK(r.roots.empty());
}

TEST_CASE("cubic residual bound on random coefficients") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> ex(-6, 6);
  for (int trial = 0; trial < 5000; ++trial) {
    const double c3 = u(rng) * std::pow(10.0, ex(rng));
    const double c2 = u(rng) * std::pow(10.0, ex(rng));
    const double c1 = u(rng) * std::pow(10.0, ex(rng));
    const double c0 = u(rng) * std::pow(10.0, ex(rng));
    const auto r = solve_cubic_real(c3, c2, c1, c0);
    REQUIRE(r.roots.size() == 3);
    const double scale = scale_of({c3, c2, c1, c0});
    for (auto z : r.roots) {
      const Complex val = ((c3 * z + c2) * z + c1) * z + c0;
      const double bound = 1e-9 * scale * std::max(1.0, std::pow(std::abs(z), 3));
      CHECK_MESSAGE(std::abs(val) <= bound, "coefficients ", c3, " ", c2, " ", c1, " ", c0);
    }
  }
}

TEST_CASE("characteristic polynomial of small matrices") {
  Eigen::Matrix2d d;
  d << 1, 0, 0, 2;
  auto c = char_poly(d);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 1.0);
  CHECK(c[1] == doctest::Approx(-3.0));
  CHECK(c[2] == doctest::Approx(2.0));

  Eigen::Matrix2d rot;
  rot << 0, 1, -1, 0;
  c = char_poly(rot);
  CHECK(c[1] == doctest::Approx(0.0));
  CHECK(c[2] == doctest::Approx(1.0));

  Eigen::MatrixXd rect(2, 3);
  CHECK_THROWS_AS(char_poly(rect), DimensionError);
}

TEST_CASE("characteristic polynomial of the baseline drift matches its eigenvalues") {
  const SystemParams p = presets::baseline();
  const auto set = solve_steady_states(p);
  REQUIRE(!set.states.empty());
  const Mat8 m = build_linearized(p, set.states.front()).drift;
  const auto c = char_poly(m);
  const auto ev = eigenvalues_general(m);
  // coefficients from the expanded product of (lambda - l_k)
  std::vector<Complex> prod{1.0};
  for (auto l : ev) {
    std::vector<Complex> next(prod.size() + 1, 0.0);
    for (std::size_t k = 0; k < prod.size(); ++k) {
      next[k] += prod[k];
      next[k + 1] -= l * prod[k];
    }
    prod = next;
  }
  for (std::size_t k = 0; k < c.size(); ++k)
    CHECK(std::abs(prod[k] - c[k]) <= 1e-6 * std::max(1.0, std::abs(c[k])));
  const double s = scale_of(c);
  for (auto l : ev) CHECK(std::abs(polyval(c, l)) <= 1e-7 * s * std::max(1.0, std::pow(std::abs(l), 8)));
}

TEST_CASE("Routh-Hurwitz on textbook polynomials") {
  CHECK(routh_hurwitz_stable({1, 1}));
  CHECK_FALSE(routh_hurwitz_stable({1, -1}));
  CHECK_FALSE(routh_hurwitz_stable({1, 0, -1}));
  CHECK(routh_hurwitz_stable({1, 3, 3, 1}));
  const auto unstable = routh_hurwitz({1, 1, 2, 8});  // two right-half-plane roots
  CHECK_FALSE(unstable.stable);
  CHECK(unstable.sign_changes == 2);
  const auto marginal = routh_hurwitz({1, 0, 1});  // +-i
  CHECK_FALSE(marginal.stable);
  CHECK(marginal.marginal);
  const auto zero_pivot = routh_hurwitz({1, 1, 1, 1});  // roots -1, +-i
  CHECK(zero_pivot.marginal);
  CHECK_FALSE(zero_pivot.stable);
}

TEST_CASE("Routh-Hurwitz agrees with eigenvalue signs on random matrices") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  int compared = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Eigen::MatrixXd m(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) m(i, j) = nd(rng);
    m -= std::abs(nd(rng)) * 2.0 * Eigen::MatrixXd::Identity(6, 6);
    const auto ev = eigenvalues_general(m);
    const double top = ev.front().real();
    if (std::abs(top) < 1e-9) continue;
    ++compared;
    CHECK(routh_hurwitz_stable(char_poly(m)) == (top < 0.0));
  }
  CHECK(compared > 400);
}

TEST_CASE("Lyapunov: scalar balance and decoupled modes") {
  Eigen::Matrix2d m = -Eigen::Matrix2d::Identity();
  Eigen::Matrix2d d = Eigen::Matrix2d::Identity();
  auto v = solve_lyapunov(m, d);
  CHECK((v - 0.5 * Eigen::Matrix2d::Identity()).norm() < 1e-15);

  m << -1, 0, 0, -2;
  d << 2, 0, 0, 4;
  v = solve_lyapunov(m, d);
  CHECK((v - Eigen::Matrix2d::Identity()).norm() < 1e-15);
}

TEST_CASE("Lyapunov residual on random stable systems") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat8 m = oracle::random_stable(rng, 8);
    const Mat8 d = Mat8::Identity();
    const Mat8 v = solve_lyapunov(m, d);
    CHECK(lyapunov_residual(m, v, d) <= 1e-10 * std::max(1.0, d.norm()));
    CHECK((v - v.transpose()).norm() <= 1e-10 * v.norm());
  }
}

TEST_CASE("Lyapunov rejects singular operators and bad shapes") {
  Eigen::Matrix2d m;
  m << 0, 1, -1, 0;  // eigenvalues +-i sum to zero
  CHECK_THROWS_AS(solve_lyapunov(m, Eigen::Matrix2d::Identity()), NoUniqueSolutionError);
  Eigen::MatrixXd a = -Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(solve_lyapunov(a, b), DimensionError);
}

TEST_CASE("Kronecker product layout") {
  Eigen::Matrix2d a;
  a << 1, 2, 3, 4;
  const auto k = kron(a, Eigen::Matrix2d::Identity());
  CHECK(k(0, 2) == 2.0);
  CHECK(k(3, 1) == 3.0);
  CHECK(k(3, 3) == 4.0);
}

}  // TEST_SUITE
