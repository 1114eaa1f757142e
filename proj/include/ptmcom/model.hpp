#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "ptmcom/numerics.hpp"
#include "ptmcom/params.hpp"

namespace ptmcom {

struct CollectiveCouplings {
  double g1 = 0.0;
  double g2 = 0.0;
};

/// g1 = g_m sqrt(M), g2 = g_m sqrt(N - M).
CollectiveCouplings collective_couplings(const SystemParams& p);

/// Bose-Einstein occupation of the vibrational modes; exactly 0 at T = 0.
double thermal_occupation(const SystemParams& p, const PhysicalConstants& c = {});

/// Total intensity-dependent detuning slope: the active-cavity detuning is
/// delta_c - shift * I_c with shift = 2 sum_k g_k^2 / (1 + gamma_k^2).
double detuning_shift(const SystemParams& p);

/// Coefficients of c3 I^3 + c2 I^2 + c1 I + c0 = 0 for the active-cavity intensity.
struct CubicCoefficients {
  double c3 = 0.0;
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
};

CubicCoefficients cubic_coefficients(const SystemParams& p);

enum class Branch { lower, middle, upper, unique };

std::string_view to_string(Branch b);

struct SteadyState {
  Complex alpha_a;
  Complex alpha_c;
  Complex beta_1;
  Complex beta_2;
  double intensity_c = 0.0;           ///< |alpha_c|^2
  double effective_detuning_c = 0.0;  ///< delta_c + sum_k 2 g_k Re(beta_k)
  Branch branch = Branch::unique;
  double residual = 0.0;              ///< max-norm of the mean-field right-hand side
};

/// Steady states ordered by increasing intensity. `diagnostic` explains an
/// empty list.
struct SteadyStateSet {
  std::vector<SteadyState> states;
  std::string diagnostic;
};

/// Mean-field fixed points from the intensity cubic (OPA must be disabled).
SteadyStateSet solve_steady_states(const SystemParams& p);

/// Mean-field fixed points with the parametric term, found by damped Newton on
/// alpha_c started from the parametric-free roots.
SteadyStateSet solve_steady_state_opa(const SystemParams& p);

/// Dispatches on p.opa_enabled.
SteadyStateSet solve_mean_field(const SystemParams& p);

/// (Re a, Im a, Re c, Im c, Re b1, Im b1, Re b2, Im b2).
using MeanFieldState = std::array<double, 8>;

MeanFieldState to_state(const SteadyState& ss);

/// Classical time derivative of the mean amplitudes (noise dropped).
MeanFieldState mean_field_rhs(const SystemParams& p, const MeanFieldState& state);

struct Trajectory {
  std::vector<double> times;
  std::vector<MeanFieldState> states;
};

struct IntegrationOptions {
  double t_end = 1.0;
  double dt = 1e-2;
  int record_every = 1;  ///< keep every k-th step; the initial and final states are always kept
};

/// Fixed-step classical RK4. Throws DivergenceError on a non-finite state.
Trajectory integrate_mean_field(const SystemParams& p, const MeanFieldState& initial,
                                const IntegrationOptions& options);

/// The same physical point in the frame where alpha_c is real and positive:
/// both optical amplitudes rotate by -arg(alpha_c), the drive phase follows,
/// and the pump phase of the parametric term shifts by +2 arg(alpha_c).
std::pair<SystemParams, SteadyState> gauge_fixed(const SystemParams& p, const SteadyState& ss);

struct LinearizedSystem {
  Mat8 drift = Mat8::Zero();
  Mat8 diffusion = Mat8::Zero();
  double g_tilde_1 = 0.0;
  double g_tilde_2 = 0.0;
  double n_th = 0.0;
  double effective_detuning_c = 0.0;
  double opa_phase_effective = 0.0;  ///< pump phase in the gauge-fixed frame
};

/// Drift and diffusion of the quadrature fluctuations
/// (x_a, y_a, x_c, y_c, q1, p1, q2, p2) around `ss`, in the gauge where alpha_c
/// is real and positive.
LinearizedSystem build_linearized(const SystemParams& p, const SteadyState& ss,
                                  const PhysicalConstants& c = {});

}  // namespace ptmcom
