#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptmcom/model.hpp"
#include "ptmcom/numerics.hpp"
#include "ptmcom/params.hpp"

namespace ptmcom {

enum class PtPhaseKind { pre_ep, post_ep, at_ep };

std::string_view to_string(PtPhaseKind k);

/// Eigenvalues of the optics-only two-mode generator at equal detunings.
struct PtPhase {
  PtPhaseKind phase = PtPhaseKind::pre_ep;
  double discriminant = 0.0;  ///< (kappa_a + kappa_c)^2 - 4 J1 J2
  Complex lambda_plus;
  Complex lambda_minus;
};

/// lambda_{+-} = -i delta - (kappa_a - kappa_c)/2 +- sqrt(discriminant)/2 (principal root).
PtPhase two_mode_eigenvalues(double delta, double kappa_a, double kappa_c, double j1, double j2);

/// The 2x2 generator [[-i delta - kappa_a, -i J1], [-i J2, -i delta + kappa_c]].
Eigen::Matrix2cd two_mode_generator(double delta, double kappa_a, double kappa_c, double j1, double j2);

/// J1 at which the discriminant vanishes: (kappa_a + kappa_c)^2 / (4 J2).
/// Throws ArgumentError for J2 <= 0.
double exceptional_point_j1(double kappa_a, double kappa_c, double j2);

/// Bisection on the sign of the discriminant over [0, upper]; an independent
/// route to exceptional_point_j1.
double exceptional_point_j1_bisection(double kappa_a, double kappa_c, double j2, double tolerance = 1e-12);

inline constexpr double kMarginalBand = 1e-9;

struct StabilityVerdict {
  bool stable = false;         ///< max_real_part < -1e-9
  double max_real_part = 0.0;
  bool marginal = false;       ///< |max_real_part| < 1e-9
  ComplexList eigenvalues;
  RouthResult routh;           ///< cross-check on the characteristic polynomial
};

/// Eigenvalue verdict on the drift, cross-checked by Routh-Hurwitz. A
/// disagreement outside the marginal band throws ConsistencyError.
StabilityVerdict full_stability(const LinearizedSystem& ls);
StabilityVerdict full_stability(const Mat8& drift);

/// Steady state, linearization and verdict for one parameter point. When
/// several branches exist the stable one with the largest intensity is chosen.
struct PointAnalysis {
  std::size_t branch_count = 0;
  std::optional<SteadyState> steady_state;      ///< chosen branch (largest intensity if none stable)
  std::optional<LinearizedSystem> linearized;   ///< of the chosen branch
  std::optional<StabilityVerdict> verdict;      ///< of the chosen branch
  std::string reason;                           ///< why the point is unstable or undefined
  bool stable() const { return verdict && verdict->stable; }
};

PointAnalysis analyze_point(const SystemParams& p, const PhysicalConstants& c = {});

struct StabilityCell {
  bool stable = false;
  bool marginal = false;
  double max_real_part = 0.0;
  std::size_t branch_count = 0;
  double intensity_c = 0.0;
  std::string reason;
};

/// Row-major: cells[i * values2.size() + j] belongs to (values1[i], values2[j]).
struct StabilityMap {
  SweepAxis axis1;
  SweepAxis axis2;
  std::vector<double> values1;
  std::vector<double> values2;
  std::vector<StabilityCell> cells;
  std::vector<std::string> warnings;

  const StabilityCell& at(std::size_t i, std::size_t j) const { return cells[i * values2.size() + j]; }
};

/// Throws ArgumentError when both axes address the same parameter.
StabilityMap stability_map(const SystemParams& base, const SweepAxis& axis1, const SweepAxis& axis2,
                           unsigned threads = 0);

}  // namespace ptmcom
