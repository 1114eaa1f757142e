#include "ptmcom/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ptmcom {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kResidualTolerance = 1e-8;

struct Drives {
  Complex a;
  Complex c;
};

Drives drives(const SystemParams& p) {
  const Complex phase = std::polar(1.0, p.drive_phase);
  return {p.drive_a * phase, p.drive_c * phase};
}

double max_abs(const MeanFieldState& s) {
  double m = 0.0;
  for (double v : s) m = std::max(m, std::abs(v));
  return m;
}

// Eliminates the passive cavity and the vibrations: for a given alpha_c the
// active-cavity equation reads F = A(I) alpha_c + B + Lambda e^{-i theta} conj(alpha_c).
struct ReducedCavity {
  Complex da;  // i delta_a + kappa_a
  Complex b;
  double shift;
  const SystemParams* p;

  Complex a_of(double intensity) const {
    const double detuning = p->delta_c - shift * intensity;
    return -kI * detuning + p->kappa_c - p->j1 * p->j2 / da;
  }

  Complex pump() const {
    return p->opa_enabled ? p->opa_gain * std::polar(1.0, -p->opa_phase) : Complex{};
  }

  Complex residual(Complex alpha_c) const {
    return a_of(std::norm(alpha_c)) * alpha_c + b + pump() * std::conj(alpha_c);
  }
};

ReducedCavity reduce(const SystemParams& p) {
  const Drives e = drives(p);
  const Complex da{p.kappa_a, p.delta_a};
  return {da, e.c - kI * p.j2 * e.a / da, detuning_shift(p), &p};
}

// Completes a steady state from alpha_c (and the intensity that fixes beta).
SteadyState complete_state(const SystemParams& p, Complex alpha_c, double intensity) {
  const Drives e = drives(p);
  const auto g = collective_couplings(p);
  const Complex da{p.kappa_a, p.delta_a};
  SteadyState ss;
  ss.alpha_c = alpha_c;
  ss.alpha_a = (e.a - kI * p.j1 * alpha_c) / da;
  ss.beta_1 = -kI * g.g1 * intensity / Complex(p.gamma_1, 1.0);
  ss.beta_2 = -kI * g.g2 * intensity / Complex(p.gamma_2, 1.0);
  ss.intensity_c = std::norm(alpha_c);
  ss.effective_detuning_c = p.delta_c + 2.0 * (g.g1 * ss.beta_1.real() + g.g2 * ss.beta_2.real());
  ss.residual = max_abs(mean_field_rhs(p, to_state(ss)));
  return ss;
}

void label_branches(std::vector<SteadyState>& states) {
  std::sort(states.begin(), states.end(),
            [](const SteadyState& a, const SteadyState& b) { return a.intensity_c < b.intensity_c; });
  if (states.size() == 1) {
    states.front().branch = Branch::unique;
    return;
  }
  for (std::size_t i = 0; i < states.size(); ++i)
    states[i].branch = i == 0                   ? Branch::lower
                       : i + 1 == states.size() ? Branch::upper
                                                : Branch::middle;
}

double residual_tolerance(const SystemParams& p) {
  return kResidualTolerance * std::max(1.0, std::max(std::abs(p.drive_a), std::abs(p.drive_c)));
}

}  // namespace

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::lower: return "lower";
    case Branch::middle: return "middle";
    case Branch::upper: return "upper";
    case Branch::unique: return "unique";
  }
  return "unknown";
}

CollectiveCouplings collective_couplings(const SystemParams& p) {
  p.validate();
  return {p.g_m * std::sqrt(static_cast<double>(p.m_partition)),
          p.g_m * std::sqrt(static_cast<double>(p.n_total - p.m_partition))};
}

double thermal_occupation(const SystemParams& p, const PhysicalConstants& c) {
  if (p.temperature < 0.0) throw ParameterError("temperature_k", "must be non-negative");
  if (p.temperature == 0.0) return 0.0;
  const double x = c.hbar * p.omega_m_abs / (c.k_boltzmann * p.temperature);
  return 1.0 / std::expm1(x);
}

double detuning_shift(const SystemParams& p) {
  const auto g = collective_couplings(p);
  return 2.0 * (g.g1 * g.g1 / (1.0 + p.gamma_1 * p.gamma_1) +
                g.g2 * g.g2 / (1.0 + p.gamma_2 * p.gamma_2));
}

CubicCoefficients cubic_coefficients(const SystemParams& p) {
  const auto g = collective_couplings(p);
  const double chi1p = 1.0 + p.gamma_1 * p.gamma_1;
  const double chi1pp = 1.0 + p.gamma_2 * p.gamma_2;
  const double chi2 = p.delta_c * p.kappa_a - p.delta_a * p.kappa_c;
  const double chi3 = 2.0 * g.g1 * g.g1 * p.delta_a / chi1p;
  const double chi4 = 2.0 * g.g1 * g.g1 * p.kappa_a / chi1p;
  const double chi5 = 2.0 * g.g2 * g.g2 * p.delta_a / chi1pp;
  const double chi6 = 2.0 * g.g2 * g.g2 * p.kappa_a / chi1pp;
  const double chi7 = -p.delta_c * p.delta_a - p.kappa_c * p.kappa_a + p.j1 * p.j2;
  const double ea = p.drive_a;
  const double ec = p.drive_c;
  const double zeta3 = ec * ec * (p.delta_a * p.delta_a + p.kappa_a * p.kappa_a) -
                       2.0 * ec * ea * p.delta_a * p.j2 + p.j2 * p.j2 * ea * ea;
  const double zeta4 = chi3 + chi5;
  const double zeta5 = chi4 + chi6;
  return {zeta5 * zeta5 + zeta4 * zeta4, 2.0 * (chi7 * zeta4 - chi2 * zeta5), chi7 * chi7 + chi2 * chi2,
          -zeta3};
}

SteadyStateSet solve_steady_states(const SystemParams& p) {
  p.validate();
  if (p.opa_enabled)
    throw PreconditionError("solve_steady_states: parametric term enabled; use solve_steady_state_opa");

  const auto cc = cubic_coefficients(p);
  SteadyStateSet out;
  PolynomialRoots roots;
  try {
    roots = solve_cubic_real(cc.c3, cc.c2, cc.c1, cc.c0);
  } catch (const ArgumentError&) {
    out.diagnostic = "intensity polynomial vanishes identically";
    return out;
  }

  const ReducedCavity rc = reduce(p);
  const double scale = std::max({std::abs(cc.c0 / std::max(cc.c1, 1e-300)), 1.0});
  for (const auto& r : roots.roots) {
    if (r.imag() != 0.0) continue;
    double intensity = r.real();
    if (intensity < 0.0) {
      if (intensity < -1e-12 * scale) continue;
      intensity = 0.0;
    }
    // alpha_c from the linear relation at fixed intensity.
    const Complex a = rc.a_of(intensity);
    if (std::abs(a) == 0.0) continue;
    const Complex alpha_c = -rc.b / a;
    const double mismatch = std::abs(intensity - std::norm(alpha_c));
    if (mismatch > 1e-8 * intensity + 1e-14) {
      std::ostringstream msg;
      msg << "solve_steady_states: self-consistency failure at I_c = " << intensity
          << " (|I_c - |alpha_c|^2| = " << mismatch << ")";
      throw NumericError(msg.str());
    }
    SteadyState ss = complete_state(p, alpha_c, intensity);
    if (ss.residual > residual_tolerance(p)) {
      std::ostringstream msg;
      msg << "solve_steady_states: mean-field residual " << ss.residual << " at I_c = " << intensity;
      throw NumericError(msg.str());
    }
    out.states.push_back(ss);
  }
  if (out.states.empty()) out.diagnostic = "no non-negative real intensity root";
  label_branches(out.states);
  return out;
}

SteadyStateSet solve_steady_state_opa(const SystemParams& p) {
  p.validate();
  if (!p.opa_enabled) throw PreconditionError("solve_steady_state_opa: parametric term disabled");

  SystemParams plain = p;
  plain.opa_enabled = false;
  std::vector<Complex> starts;
  for (const auto& ss : solve_steady_states(plain).states) starts.push_back(ss.alpha_c);
  const ReducedCavity rc = reduce(p);
  starts.push_back(-rc.b / rc.a_of(0.0));

  const Complex pump = rc.pump();
  const double tol = 1e-13 * std::max(1.0, std::abs(rc.b));
  std::vector<Complex> found;
  int failures = 0;
  for (Complex z : starts) {
    bool converged = false;
    double fnorm = std::abs(rc.residual(z));
    for (int iter = 0; iter < 200 && !converged; ++iter) {
      if (fnorm <= tol) {
        converged = true;
        break;
      }
      const Complex a = rc.a_of(std::norm(z));
      const Complex da_di = kI * rc.shift;
      const Complex fx = a + da_di * 2.0 * z.real() * z + pump;
      const Complex fy = kI * a + da_di * 2.0 * z.imag() * z - kI * pump;
      Eigen::Matrix2d jac;
      jac << fx.real(), fy.real(), fx.imag(), fy.imag();
      const Complex f = rc.residual(z);
      const Eigen::Vector2d step = jac.fullPivLu().solve(Eigen::Vector2d(-f.real(), -f.imag()));
      if (!step.allFinite()) break;
      double lambda = 1.0;
      bool improved = false;
      for (int k = 0; k < 40; ++k, lambda *= 0.5) {
        const Complex trial = z + lambda * Complex(step(0), step(1));
        const double tn = std::abs(rc.residual(trial));
        if (tn < fnorm) {
          z = trial;
          fnorm = tn;
          improved = true;
          break;
        }
      }
      if (!improved) {
        converged = fnorm <= 1e3 * tol;
        break;
      }
    }
    if (!converged) {
      ++failures;
      continue;
    }
    const bool duplicate = std::any_of(found.begin(), found.end(), [&](Complex w) {
      return std::abs(w - z) <= 1e-7 * std::max(1.0, std::abs(z));
    });
    if (!duplicate) found.push_back(z);
  }

  SteadyStateSet out;
  for (Complex z : found) {
    SteadyState ss = complete_state(p, z, std::norm(z));
    if (ss.residual <= residual_tolerance(p)) out.states.push_back(ss);
  }
  if (out.states.empty())
    out.diagnostic = "parametric fixed point: Newton did not converge from " +
                     std::to_string(starts.size()) + " starts (" + std::to_string(failures) +
                     " failed)";
  label_branches(out.states);
  return out;
}

SteadyStateSet solve_mean_field(const SystemParams& p) {
  return p.opa_enabled ? solve_steady_state_opa(p) : solve_steady_states(p);
}

MeanFieldState to_state(const SteadyState& ss) {
  return {ss.alpha_a.real(), ss.alpha_a.imag(), ss.alpha_c.real(), ss.alpha_c.imag(),
          ss.beta_1.real(),  ss.beta_1.imag(),  ss.beta_2.real(),  ss.beta_2.imag()};
}

MeanFieldState mean_field_rhs(const SystemParams& p, const MeanFieldState& s) {
  const auto g = collective_couplings(p);
  const Drives e = drives(p);
  const Complex a{s[0], s[1]};
  const Complex c{s[2], s[3]};
  const Complex b1{s[4], s[5]};
  const Complex b2{s[6], s[7]};
  const double displacement = 2.0 * (g.g1 * b1.real() + g.g2 * b2.real());
  const Complex da = -Complex(p.kappa_a, p.delta_a) * a - kI * p.j1 * c + e.a;
  Complex dc = -Complex(-p.kappa_c, p.delta_c) * c - kI * displacement * c - kI * p.j2 * a + e.c;
  if (p.opa_enabled) dc += p.opa_gain * std::polar(1.0, -p.opa_phase) * std::conj(c);
  const double intensity = std::norm(c);
  const Complex db1 = -Complex(p.gamma_1, 1.0) * b1 - kI * g.g1 * intensity;
  const Complex db2 = -Complex(p.gamma_2, 1.0) * b2 - kI * g.g2 * intensity;
  return {da.real(), da.imag(), dc.real(), dc.imag(), db1.real(), db1.imag(), db2.real(), db2.imag()};
}

Trajectory integrate_mean_field(const SystemParams& p, const MeanFieldState& initial,
                                const IntegrationOptions& options) {
  p.validate();
  if (!(options.dt > 0.0)) throw ArgumentError("integrate_mean_field: dt must be positive");
  if (!(options.t_end >= options.dt))
    throw ArgumentError("integrate_mean_field: t_end must be at least dt");
  if (options.record_every < 1) throw ArgumentError("integrate_mean_field: record_every must be >= 1");

  const auto steps = static_cast<long long>(std::llround(options.t_end / options.dt));
  const double dt = options.dt;
  auto axpy = [](const MeanFieldState& x, double h, const MeanFieldState& k) {
    MeanFieldState out;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + h * k[i];
    return out;
  };

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(initial);
  MeanFieldState x = initial;
  for (long long n = 1; n <= steps; ++n) {
    const auto k1 = mean_field_rhs(p, x);
    const auto k2 = mean_field_rhs(p, axpy(x, 0.5 * dt, k1));
    const auto k3 = mean_field_rhs(p, axpy(x, 0.5 * dt, k2));
    const auto k4 = mean_field_rhs(p, axpy(x, dt, k3));
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    const double t = static_cast<double>(n) * dt;
    if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); })) {
      std::ostringstream msg;
      msg << "integrate_mean_field: state diverged at t = " << t;
      throw DivergenceError(t, msg.str());
    }
    if (n % options.record_every == 0 || n == steps) {
      traj.times.push_back(t);
      traj.states.push_back(x);
    }
  }
  return traj;
}

std::pair<SystemParams, SteadyState> gauge_fixed(const SystemParams& p, const SteadyState& ss) {
  const double phi = std::abs(ss.alpha_c) > 0.0 ? std::arg(ss.alpha_c) : 0.0;
  const Complex rot = std::polar(1.0, -phi);
  SystemParams q = p;
  q.drive_phase = p.drive_phase - phi;
  q.opa_phase = p.opa_phase + 2.0 * phi;
  SteadyState s = ss;
  s.alpha_a *= rot;
  s.alpha_c = Complex(std::abs(ss.alpha_c), 0.0);
  return {q, s};
}

LinearizedSystem build_linearized(const SystemParams& p, const SteadyState& ss,
                                  const PhysicalConstants& c) {
  const auto [q, s] = gauge_fixed(p, ss);
  const auto g = collective_couplings(p);
  LinearizedSystem ls;
  const double amplitude = s.alpha_c.real();
  ls.g_tilde_1 = g.g1 * amplitude;
  ls.g_tilde_2 = g.g2 * amplitude;
  ls.effective_detuning_c = ss.effective_detuning_c;
  ls.opa_phase_effective = q.opa_phase;
  ls.n_th = thermal_occupation(p, c);

  const double ka = p.kappa_a;
  const double kc = p.kappa_c;
  const double dt = ss.effective_detuning_c;
  Mat8& m = ls.drift;
  m.setZero();
  m(0, 0) = -ka;  m(0, 1) = p.delta_a;  m(0, 3) = p.j1;
  m(1, 0) = -p.delta_a;  m(1, 1) = -ka;  m(1, 2) = -p.j1;
  m(2, 1) = p.j2;  m(2, 2) = kc;  m(2, 3) = dt;
  m(3, 0) = -p.j2;  m(3, 2) = -dt;  m(3, 3) = kc;  m(3, 4) = -2.0 * ls.g_tilde_1;  m(3, 6) = -2.0 * ls.g_tilde_2;
  m(4, 4) = -p.gamma_1;  m(4, 5) = 1.0;
  m(5, 2) = -2.0 * ls.g_tilde_1;  m(5, 4) = -1.0;  m(5, 5) = -p.gamma_1;
  m(6, 6) = -p.gamma_2;  m(6, 7) = 1.0;
  m(7, 2) = -2.0 * ls.g_tilde_2;  m(7, 6) = -1.0;  m(7, 7) = -p.gamma_2;
  if (p.opa_enabled) {
    const double lc = p.opa_gain * std::cos(q.opa_phase);
    const double ls_ = p.opa_gain * std::sin(q.opa_phase);
    m(2, 2) += lc;  m(2, 3) -= ls_;
    m(3, 2) -= ls_;  m(3, 3) -= lc;
  }

  const double thermal = 2.0 * ls.n_th + 1.0;
  ls.diffusion.setZero();
  ls.diffusion.diagonal() << ka, ka, std::abs(kc), std::abs(kc), p.gamma_1 * thermal, p.gamma_1 * thermal,
      p.gamma_2 * thermal, p.gamma_2 * thermal;
  return ls;
}

}  // namespace ptmcom
