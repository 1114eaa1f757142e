#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "ptmcom/model.hpp"
#include "ptmcom/numerics.hpp"
#include "ptmcom/params.hpp"
#include "ptmcom/spectra.hpp"

namespace ptmcom {

/// What to do when a solved covariance violates the uncertainty bound.
enum class PhysicalityPolicy {
  strict,  ///< throw UnphysicalStateError
  report,  ///< keep the matrix and record the margin
};

inline constexpr double kPhysicalityTolerance = 1e-9;

struct CovarianceMatrix {
  Mat8 v = Mat8::Zero();           ///< order (x_a, y_a, x_c, y_c, q1, p1, q2, p2)
  double residual = 0.0;           ///< Frobenius norm of M V + V M^T + D
  double physicality_margin = 0.0; ///< smallest eigenvalue of V + (i/2) Omega
};

/// Block-diagonal symplectic form, each block [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(Eigen::Index modes);

/// Smallest eigenvalue of the Hermitian matrix V + (i/2) Omega (any even size).
double physicality_margin(const Eigen::MatrixXd& v);

/// Solves the Lyapunov equation of a stable linearization. Throws
/// PreconditionError when the drift is not stable.
CovarianceMatrix steady_covariance(const LinearizedSystem& ls,
                                   PhysicalityPolicy policy = PhysicalityPolicy::strict);

enum class Mode { a = 0, c = 1, b1 = 2, b2 = 3 };

std::string_view to_string(Mode m);

/// Rows and columns of modes i and j, in that order. Throws ArgumentError for i == j.
Mat4 extract_bipartite(const Mat8& v, Mode i, Mode j);

/// Writes a bipartite block back into the corresponding entries of v.
void embed_bipartite(Mat8& v, const Mat4& block, Mode i, Mode j);

/// Smallest symplectic eigenvalue of the partially transposed two-mode covariance.
double partial_transpose_symplectic_min(const Mat4& v4);

/// E_N = max(0, -ln(2 nu)) with nu the value above. Throws UnphysicalStateError
/// when the two-mode invariants are inconsistent beyond 1e-12.
double log_negativity(const Mat4& v4);

enum class Channel { ac, aB1, cB2, B1B2, aB2, cB1 };

inline constexpr std::array kAllChannels{Channel::ac,   Channel::aB1, Channel::cB2,
                                         Channel::B1B2, Channel::aB2, Channel::cB1};

std::string_view to_string(Channel ch);  ///< "e_ac", "e_aB1", ...
std::optional<Channel> channel_by_name(std::string_view name);
std::pair<Mode, Mode> channel_modes(Channel ch);

struct ChannelSet {
  double e_ac = 0.0;
  double e_aB1 = 0.0;
  double e_cB2 = 0.0;
  double e_B1B2 = 0.0;
  double e_aB2 = 0.0;
  double e_cB1 = 0.0;

  double operator[](Channel ch) const;
  double& operator[](Channel ch);
  bool operator==(const ChannelSet&) const = default;
};

ChannelSet channels_from_covariance(const Mat8& v);

struct ChannelOptions {
  PhysicalityPolicy policy = PhysicalityPolicy::strict;
  PhysicalConstants constants{};
};

struct ChannelEvaluation {
  PointAnalysis point;
  std::optional<CovarianceMatrix> covariance;  ///< present iff the point is stable
  std::optional<ChannelSet> channels;          ///< present iff the point is stable
  bool stable() const { return point.stable(); }
};

/// Steady state, stability, covariance and the six negativities. Unstable
/// points come back with the verdict and no channels. Errors from the stages
/// propagate.
ChannelEvaluation all_channels(const SystemParams& p, const ChannelOptions& options = {});

}  // namespace ptmcom
