#include "ptmcom/entanglement.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

#include "ptmcom/errors.hpp"

namespace ptmcom {

namespace {

constexpr double kClamp = 1e-12;

double det2(const Mat4& m, Eigen::Index r, Eigen::Index c) {
  return m(r, c) * m(r + 1, c + 1) - m(r, c + 1) * m(r + 1, c);
}

}  // namespace

Eigen::MatrixXd symplectic_form(Eigen::Index modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (Eigen::Index k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

double physicality_margin(const Eigen::MatrixXd& v) {
  if (v.rows() != v.cols() || v.rows() % 2 != 0)
    throw DimensionError("physicality_margin: expected an even square matrix");
  const Eigen::MatrixXcd h = v.cast<Complex>() +
                             Complex(0.0, 0.5) * symplectic_form(v.rows() / 2).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("physicality_margin: eigensolver failed");
  return solver.eigenvalues().minCoeff();
}

CovarianceMatrix steady_covariance(const LinearizedSystem& ls, PhysicalityPolicy policy) {
  const StabilityVerdict verdict = full_stability(ls);
  if (!verdict.stable)
    throw PreconditionError("steady_covariance: drift is not stable (max Re = " +
                            std::to_string(verdict.max_real_part) + ")");
  CovarianceMatrix out;
  const Mat8 v = solve_lyapunov(ls.drift, ls.diffusion);
  out.v = 0.5 * (v + v.transpose());
  out.residual = lyapunov_residual(ls.drift, out.v, ls.diffusion);
  out.physicality_margin = physicality_margin(out.v);
  if (policy == PhysicalityPolicy::strict && out.physicality_margin < -kPhysicalityTolerance)
    throw UnphysicalStateError(out.physicality_margin,
                               "steady_covariance: V + (i/2) Omega has eigenvalue " +
                                   std::to_string(out.physicality_margin));
  return out;
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::a: return "a";
    case Mode::c: return "c";
    case Mode::b1: return "B1";
    case Mode::b2: return "B2";
  }
  return "?";
}

Mat4 extract_bipartite(const Mat8& v, Mode i, Mode j) {
  if (i == j) throw ArgumentError("extract_bipartite: modes must differ");
  const std::array<Eigen::Index, 2> base{2 * static_cast<Eigen::Index>(i),
                                         2 * static_cast<Eigen::Index>(j)};
  Mat4 out;
  for (int bi = 0; bi < 2; ++bi)
    for (int bj = 0; bj < 2; ++bj) out.block<2, 2>(2 * bi, 2 * bj) = v.block<2, 2>(base[bi], base[bj]);
  return out;
}

void embed_bipartite(Mat8& v, const Mat4& block, Mode i, Mode j) {
  if (i == j) throw ArgumentError("embed_bipartite: modes must differ");
  const std::array<Eigen::Index, 2> base{2 * static_cast<Eigen::Index>(i),
                                         2 * static_cast<Eigen::Index>(j)};
  for (int bi = 0; bi < 2; ++bi)
    for (int bj = 0; bj < 2; ++bj) v.block<2, 2>(base[bi], base[bj]) = block.block<2, 2>(2 * bi, 2 * bj);
}

double partial_transpose_symplectic_min(const Mat4& v4) {
  const double det_a = det2(v4, 0, 0);
  const double det_b = det2(v4, 2, 2);
  const double det_c = det2(v4, 0, 2);
  const double det_v = v4.determinant();
  const double sigma = det_a + det_b - 2.0 * det_c;
  double disc = sigma * sigma - 4.0 * det_v;
  if (disc < 0.0) {
    if (disc < -kClamp)
      throw UnphysicalStateError(disc, "log_negativity: sigma^2 - 4 det V = " + std::to_string(disc));
    disc = 0.0;
  }
  // nu_-^2 = (sigma - sqrt(disc)) / 2, written as 2 det V / (sigma + sqrt(disc))
  // to avoid cancellation for strongly entangled states.
  const double denom = sigma + std::sqrt(disc);
  double nu2 = denom > 0.0 ? 2.0 * det_v / denom : 0.5 * (sigma - std::sqrt(disc));
  if (nu2 < 0.0) {
    if (nu2 < -kClamp)
      throw UnphysicalStateError(nu2, "log_negativity: negative symplectic eigenvalue squared");
    nu2 = 0.0;
  }
  return std::sqrt(nu2);
}

double log_negativity(const Mat4& v4) {
  const double nu = partial_transpose_symplectic_min(v4);
  if (nu == 0.0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, -std::log(2.0 * nu));
}

std::string_view to_string(Channel ch) {
  switch (ch) {
    case Channel::ac: return "e_ac";
    case Channel::aB1: return "e_aB1";
    case Channel::cB2: return "e_cB2";
    case Channel::B1B2: return "e_B1B2";
    case Channel::aB2: return "e_aB2";
    case Channel::cB1: return "e_cB1";
  }
  return "?";
}

std::optional<Channel> channel_by_name(std::string_view name) {
  for (Channel ch : kAllChannels) {
    const auto full = to_string(ch);
    if (name == full || name == full.substr(2)) return ch;
  }
  return std::nullopt;
}

std::pair<Mode, Mode> channel_modes(Channel ch) {
  switch (ch) {
    case Channel::ac: return {Mode::a, Mode::c};
    case Channel::aB1: return {Mode::a, Mode::b1};
    case Channel::cB2: return {Mode::c, Mode::b2};
    case Channel::B1B2: return {Mode::b1, Mode::b2};
    case Channel::aB2: return {Mode::a, Mode::b2};
    case Channel::cB1: return {Mode::c, Mode::b1};
  }
  throw ArgumentError("unknown channel");
}

double ChannelSet::operator[](Channel ch) const {
  return const_cast<ChannelSet&>(*this)[ch];
}

double& ChannelSet::operator[](Channel ch) {
  switch (ch) {
    case Channel::ac: return e_ac;
    case Channel::aB1: return e_aB1;
    case Channel::cB2: return e_cB2;
    case Channel::B1B2: return e_B1B2;
    case Channel::aB2: return e_aB2;
    case Channel::cB1: return e_cB1;
  }
  throw ArgumentError("unknown channel");
}

ChannelSet channels_from_covariance(const Mat8& v) {
  ChannelSet out;
  for (Channel ch : kAllChannels) {
    const auto [i, j] = channel_modes(ch);
    out[ch] = log_negativity(extract_bipartite(v, i, j));
  }
  return out;
}

ChannelEvaluation all_channels(const SystemParams& p, const ChannelOptions& options) {
  p.validate();
  ChannelEvaluation out;
  out.point = analyze_point(p, options.constants);
  if (!out.point.stable()) return out;
  out.covariance = steady_covariance(*out.point.linearized, options.policy);
  out.channels = channels_from_covariance(out.covariance->v);
  return out;
}

}  // namespace ptmcom
