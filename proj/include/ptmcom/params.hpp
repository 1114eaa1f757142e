#pragma once

#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ptmcom {

/// CODATA exact values.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;       // J s
  double k_boltzmann = 1.380649e-23;   // J / K
};

inline constexpr double kDefaultVibrationalFrequency = 2.0 * std::numbers::pi * 30e12;  // rad/s

/// All model rates are dimensionless in units of the vibrational frequency;
/// omega_m_abs only enters the thermal occupation. Defaults are the baseline
/// nonreciprocal operating point (kappa_a = 1, kappa_c = 0.1, J1 = 0.6,
/// J2 = 0.2, g_m = 1e-3, N = 100, M = 50, drive 16, T = 312 K).
struct SystemParams {
  double omega_m_abs = kDefaultVibrationalFrequency;
  double kappa_a = 1.0;   ///< passive-cavity loss
  double kappa_c = 0.1;   ///< active-cavity gain; negative models a lossy cavity
  double delta_a = 1.0;
  double delta_c = 1.0;
  double gamma_1 = 1e-4;
  double gamma_2 = 1e-4;
  double j1 = 0.6;        ///< a <- c coupling
  double j2 = 0.2;        ///< c <- a coupling
  double g_m = 1e-3;      ///< single-molecule optomechanical coupling
  double drive_a = 16.0;
  double drive_c = 16.0;
  double drive_phase = 0.0;  ///< common phase of both drives (radians)
  int n_total = 100;
  int m_partition = 50;
  double temperature = 312.0;  ///< kelvin
  bool opa_enabled = false;
  double opa_gain = 0.0;   ///< Lambda
  double opa_phase = 0.0;  ///< theta (radians)

  /// Throws ParameterError naming the first violated invariant.
  void validate() const;

  bool operator==(const SystemParams&) const = default;
};

/// Named operating points used throughout the tests and the CLI.
namespace presets {
SystemParams baseline();        ///< nonreciprocal map point (kappa_c = 0.1)
SystemParams bistability();     ///< kappa_c = 0.2 S-curve point
SystemParams thermal();         ///< kappa_c = 0.02 temperature/partition point
SystemParams opa_comparison();  ///< kappa_a = 0.3, kappa_c = 0.02, Lambda = 0.2, theta = pi/2
SystemParams molecule_number(); ///< kappa_c = 0.02, molecule-number sweeps
std::optional<SystemParams> by_name(std::string_view name);
std::vector<std::string_view> names();
}  // namespace presets

/// Every scalar or count field that a sweep axis or a flag can address.
enum class ParameterId {
  omega_m_abs,
  kappa_a,
  kappa_c,
  delta_a,
  delta_c,
  gamma_1,
  gamma_2,
  j1,
  j2,
  g_m,
  drive_a,
  drive_c,
  drive,  ///< both drives at once
  drive_phase,
  n_total,
  m_partition,
  temperature,
  opa_enabled,
  opa_gain,
  opa_phase,
};

struct ParameterInfo {
  ParameterId id;
  std::string_view key;   ///< config-file key, e.g. "kappa_a"
  std::string_view flag;  ///< command-line flag without dashes, e.g. "kappa-a"
  bool integer;
  bool boolean;
  bool axis_only;  ///< not a stored field ("drive")
};

std::span<const ParameterInfo> parameter_table();
const ParameterInfo& parameter_info(ParameterId id);
std::optional<ParameterId> parameter_by_key(std::string_view key);

double get_parameter(const SystemParams& p, ParameterId id);
/// Integer fields are rounded to the nearest count; booleans test != 0.
void set_parameter(SystemParams& p, ParameterId id, double value);

enum class AxisScale { linear, log };

/// A sampled parameter range.
struct SweepAxis {
  ParameterId parameter = ParameterId::j1;
  double start = 0.0;
  double stop = 1.0;
  int points = 1;
  AxisScale scale = AxisScale::linear;

  /// Throws ArgumentError when start >= stop with points > 1, points < 1, or a
  /// log axis starts at or below zero.
  void validate() const;

  /// Sample values. Integer parameters are rounded and duplicates collapsed;
  /// when that happens a message is appended to `warnings` (if given).
  std::vector<double> values(std::vector<std::string>* warnings = nullptr) const;

  bool operator==(const SweepAxis&) const = default;
};

}  // namespace ptmcom
