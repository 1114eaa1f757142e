#include "ptmcom/spectra.hpp"

#include <cmath>

#include "ptmcom/errors.hpp"
#include "ptmcom/parallel.hpp"

namespace ptmcom {

namespace {

constexpr double kEpBand = 1e-12;

double ep_discriminant(double kappa_a, double kappa_c, double j1, double j2) {
  const double s = kappa_a + kappa_c;
  return s * s - 4.0 * j1 * j2;
}

}  // namespace

std::string_view to_string(PtPhaseKind k) {
  switch (k) {
    case PtPhaseKind::pre_ep: return "pre_ep";
    case PtPhaseKind::post_ep: return "post_ep";
    case PtPhaseKind::at_ep: return "at_ep";
  }
  return "?";
}

PtPhase two_mode_eigenvalues(double delta, double kappa_a, double kappa_c, double j1, double j2) {
  PtPhase out;
  out.discriminant = ep_discriminant(kappa_a, kappa_c, j1, j2);
  if (std::abs(out.discriminant) <= kEpBand)
    out.phase = PtPhaseKind::at_ep;
  else
    out.phase = out.discriminant > 0.0 ? PtPhaseKind::pre_ep : PtPhaseKind::post_ep;
  const Complex centre(-(kappa_a - kappa_c) / 2.0, -delta);
  // Split by sign so the real and imaginary offsets are exact in each phase.
  const Complex root = out.discriminant >= 0.0 ? Complex(std::sqrt(out.discriminant), 0.0)
                                               : Complex(0.0, std::sqrt(-out.discriminant));
  out.lambda_plus = centre + 0.5 * root;
  out.lambda_minus = centre - 0.5 * root;
  return out;
}

Eigen::Matrix2cd two_mode_generator(double delta, double kappa_a, double kappa_c, double j1,
                                    double j2) {
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd m;
  m << -i * delta - kappa_a, -i * j1, -i * j2, -i * delta + kappa_c;
  return m;
}

double exceptional_point_j1(double kappa_a, double kappa_c, double j2) {
  if (!(j2 > 0.0)) throw ArgumentError("exceptional_point_j1: no exceptional point for j2 <= 0");
  const double s = kappa_a + kappa_c;
  return s * s / (4.0 * j2);
}

double exceptional_point_j1_bisection(double kappa_a, double kappa_c, double j2,
                                      double tolerance) {
  if (!(j2 > 0.0))
    throw ArgumentError("exceptional_point_j1_bisection: no exceptional point for j2 <= 0");
  double lo = 0.0;
  double hi = 1.0;
  while (ep_discriminant(kappa_a, kappa_c, hi, j2) > 0.0) hi *= 2.0;
  if (ep_discriminant(kappa_a, kappa_c, lo, j2) <= 0.0) return lo;
  while (hi - lo > tolerance * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (ep_discriminant(kappa_a, kappa_c, mid, j2) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

StabilityVerdict full_stability(const Mat8& drift) {
  StabilityVerdict v;
  v.eigenvalues = eigenvalues_general(drift);
  v.max_real_part = v.eigenvalues.front().real();
  v.stable = v.max_real_part < -kMarginalBand;
  v.marginal = std::abs(v.max_real_part) < kMarginalBand;
  v.routh = routh_hurwitz(char_poly(drift));
  if (!v.marginal && v.routh.stable != v.stable)
    throw ConsistencyError("full_stability: Routh-Hurwitz says " +
                           std::string(v.routh.stable ? "stable" : "unstable") +
                           " but max Re(lambda) = " + std::to_string(v.max_real_part));
  return v;
}

StabilityVerdict full_stability(const LinearizedSystem& ls) { return full_stability(ls.drift); }

PointAnalysis analyze_point(const SystemParams& p, const PhysicalConstants& c) {
  PointAnalysis out;
  const SteadyStateSet set = solve_mean_field(p);
  out.branch_count = set.states.size();
  if (set.states.empty()) {
    out.reason = set.diagnostic.empty() ? "no physical steady state" : set.diagnostic;
    return out;
  }
  // States are ordered by increasing intensity; walk down from the top.
  for (auto it = set.states.rbegin(); it != set.states.rend(); ++it) {
    LinearizedSystem ls = build_linearized(p, *it, c);
    StabilityVerdict v = full_stability(ls);
    const bool first = !out.verdict.has_value();
    if (v.stable || first) {
      out.steady_state = *it;
      out.linearized = std::move(ls);
      out.verdict = std::move(v);
    }
    if (out.verdict->stable) break;
  }
  if (!out.verdict->stable)
    out.reason = out.branch_count > 1 ? "no stable branch" : "unstable steady state";
  return out;
}

StabilityMap stability_map(const SystemParams& base, const SweepAxis& axis1,
                           const SweepAxis& axis2, unsigned threads) {
  if (axis1.parameter == axis2.parameter)
    throw ArgumentError("stability_map: both axes address " +
                        std::string(parameter_info(axis1.parameter).key));
  StabilityMap map;
  map.axis1 = axis1;
  map.axis2 = axis2;
  map.values1 = axis1.values(&map.warnings);
  map.values2 = axis2.values(&map.warnings);
  const std::size_t n2 = map.values2.size();
  map.cells.resize(map.values1.size() * n2);
  parallel_for(map.cells.size(), threads, [&](std::size_t k) {
    SystemParams p = base;
    set_parameter(p, axis1.parameter, map.values1[k / n2]);
    set_parameter(p, axis2.parameter, map.values2[k % n2]);
    StabilityCell& cell = map.cells[k];
    try {
      p.validate();
      const PointAnalysis a = analyze_point(p);
      cell.branch_count = a.branch_count;
      cell.reason = a.reason;
      if (a.verdict) {
        cell.stable = a.verdict->stable;
        cell.marginal = a.verdict->marginal;
        cell.max_real_part = a.verdict->max_real_part;
        cell.intensity_c = a.steady_state->intensity_c;
      }
    } catch (const Error& e) {
      cell.stable = false;
      cell.reason = e.what();
    }
  });
  return map;
}

}  // namespace ptmcom
