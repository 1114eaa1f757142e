#include "ptmcom/params.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ptmcom/errors.hpp"

namespace ptmcom {

namespace {

void require_finite(double v, std::string_view key) {
  if (!std::isfinite(v)) throw ParameterError(std::string(key), "must be finite");
}

constexpr std::array kParameters{
    ParameterInfo{ParameterId::omega_m_abs, "omega_m_abs", "omega-m-abs", false, false, false},
    ParameterInfo{ParameterId::kappa_a, "kappa_a", "kappa-a", false, false, false},
    ParameterInfo{ParameterId::kappa_c, "kappa_c", "kappa-c", false, false, false},
    ParameterInfo{ParameterId::delta_a, "delta_a", "delta-a", false, false, false},
    ParameterInfo{ParameterId::delta_c, "delta_c", "delta-c", false, false, false},
    ParameterInfo{ParameterId::gamma_1, "gamma_1", "gamma-1", false, false, false},
    ParameterInfo{ParameterId::gamma_2, "gamma_2", "gamma-2", false, false, false},
    ParameterInfo{ParameterId::j1, "j1", "j1", false, false, false},
    ParameterInfo{ParameterId::j2, "j2", "j2", false, false, false},
    ParameterInfo{ParameterId::g_m, "g_m", "g-m", false, false, false},
    ParameterInfo{ParameterId::drive_a, "drive_a", "drive-a", false, false, false},
    ParameterInfo{ParameterId::drive_c, "drive_c", "drive-c", false, false, false},
    ParameterInfo{ParameterId::drive, "drive", "drive", false, false, true},
    ParameterInfo{ParameterId::drive_phase, "drive_phase", "drive-phase", false, false, false},
    ParameterInfo{ParameterId::n_total, "n_total", "n-total", true, false, false},
    ParameterInfo{ParameterId::m_partition, "m_partition", "m-partition", true, false, false},
    ParameterInfo{ParameterId::temperature, "temperature_k", "temperature-k", false, false, false},
    ParameterInfo{ParameterId::opa_enabled, "opa_enabled", "opa-enabled", false, true, false},
    ParameterInfo{ParameterId::opa_gain, "opa_gain", "opa-gain", false, false, false},
    ParameterInfo{ParameterId::opa_phase, "opa_phase", "opa-phase", false, false, false},
};

}  // namespace

void SystemParams::validate() const {
  require_finite(omega_m_abs, "omega_m_abs");
  require_finite(kappa_a, "kappa_a");
  require_finite(kappa_c, "kappa_c");
  require_finite(delta_a, "delta_a");
  require_finite(delta_c, "delta_c");
  require_finite(gamma_1, "gamma_1");
  require_finite(gamma_2, "gamma_2");
  require_finite(j1, "j1");
  require_finite(j2, "j2");
  require_finite(g_m, "g_m");
  require_finite(drive_a, "drive_a");
  require_finite(drive_c, "drive_c");
  require_finite(drive_phase, "drive_phase");
  require_finite(temperature, "temperature_k");
  require_finite(opa_gain, "opa_gain");
  require_finite(opa_phase, "opa_phase");
  if (omega_m_abs <= 0.0) throw ParameterError("omega_m_abs", "must be positive");
  if (kappa_a <= 0.0) throw ParameterError("kappa_a", "must be positive");
  if (gamma_1 <= 0.0) throw ParameterError("gamma_1", "must be positive");
  if (gamma_2 <= 0.0) throw ParameterError("gamma_2", "must be positive");
  if (temperature < 0.0) throw ParameterError("temperature_k", "must be non-negative");
  if (n_total < 1) throw ParameterError("n_total", "must be at least 1");
  if (m_partition < 1 || m_partition > n_total)
    throw ParameterError("m_partition", "must satisfy 1 <= m_partition <= n_total (" +
                                            std::to_string(m_partition) + " vs " +
                                            std::to_string(n_total) + ")");
}

namespace presets {

SystemParams baseline() { return SystemParams{}; }

SystemParams bistability() {
  SystemParams p;
  p.kappa_c = 0.2;
  return p;
}

SystemParams thermal() {
  SystemParams p;
  p.kappa_c = 0.02;
  return p;
}

SystemParams opa_comparison() {
  SystemParams p;
  p.kappa_a = 0.3;
  p.kappa_c = 0.02;
  p.opa_gain = 0.2;
  p.opa_phase = std::numbers::pi / 2.0;
  return p;
}

SystemParams molecule_number() {
  SystemParams p;
  p.kappa_c = 0.02;
  return p;
}

std::optional<SystemParams> by_name(std::string_view name) {
  if (name == "baseline") return baseline();
  if (name == "bistability") return bistability();
  if (name == "thermal") return thermal();
  if (name == "opa_comparison") return opa_comparison();
  if (name == "molecule_number") return molecule_number();
  return std::nullopt;
}

std::vector<std::string_view> names() {
  return {"baseline", "bistability", "thermal", "opa_comparison", "molecule_number"};
}

}  // namespace presets

std::span<const ParameterInfo> parameter_table() { return kParameters; }

const ParameterInfo& parameter_info(ParameterId id) {
  for (const auto& info : kParameters)
    if (info.id == id) return info;
  throw ArgumentError("unknown parameter id");
}

std::optional<ParameterId> parameter_by_key(std::string_view key) {
  for (const auto& info : kParameters)
    if (info.key == key || info.flag == key) return info.id;
  return std::nullopt;
}

double get_parameter(const SystemParams& p, ParameterId id) {
  switch (id) {
    case ParameterId::omega_m_abs: return p.omega_m_abs;
    case ParameterId::kappa_a: return p.kappa_a;
    case ParameterId::kappa_c: return p.kappa_c;
    case ParameterId::delta_a: return p.delta_a;
    case ParameterId::delta_c: return p.delta_c;
    case ParameterId::gamma_1: return p.gamma_1;
    case ParameterId::gamma_2: return p.gamma_2;
    case ParameterId::j1: return p.j1;
    case ParameterId::j2: return p.j2;
    case ParameterId::g_m: return p.g_m;
    case ParameterId::drive_a: return p.drive_a;
    case ParameterId::drive_c: return p.drive_c;
    case ParameterId::drive: return p.drive_c;
    case ParameterId::drive_phase: return p.drive_phase;
    case ParameterId::n_total: return p.n_total;
    case ParameterId::m_partition: return p.m_partition;
    case ParameterId::temperature: return p.temperature;
    case ParameterId::opa_enabled: return p.opa_enabled ? 1.0 : 0.0;
    case ParameterId::opa_gain: return p.opa_gain;
    case ParameterId::opa_phase: return p.opa_phase;
  }
  throw ArgumentError("unknown parameter id");
}

void set_parameter(SystemParams& p, ParameterId id, double value) {
  auto count = [&](std::string_view key) {
    if (!std::isfinite(value) || std::abs(value) > 2e9)
      throw ParameterError(std::string(key), "count out of range");
    return static_cast<int>(std::lround(value));
  };
  switch (id) {
    case ParameterId::omega_m_abs: p.omega_m_abs = value; return;
    case ParameterId::kappa_a: p.kappa_a = value; return;
    case ParameterId::kappa_c: p.kappa_c = value; return;
    case ParameterId::delta_a: p.delta_a = value; return;
    case ParameterId::delta_c: p.delta_c = value; return;
    case ParameterId::gamma_1: p.gamma_1 = value; return;
    case ParameterId::gamma_2: p.gamma_2 = value; return;
    case ParameterId::j1: p.j1 = value; return;
    case ParameterId::j2: p.j2 = value; return;
    case ParameterId::g_m: p.g_m = value; return;
    case ParameterId::drive_a: p.drive_a = value; return;
    case ParameterId::drive_c: p.drive_c = value; return;
    case ParameterId::drive:
      p.drive_a = value;
      p.drive_c = value;
      return;
    case ParameterId::drive_phase: p.drive_phase = value; return;
    case ParameterId::n_total: p.n_total = count("n_total"); return;
    case ParameterId::m_partition: p.m_partition = count("m_partition"); return;
    case ParameterId::temperature: p.temperature = value; return;
    case ParameterId::opa_enabled: p.opa_enabled = value != 0.0; return;
    case ParameterId::opa_gain: p.opa_gain = value; return;
    case ParameterId::opa_phase: p.opa_phase = value; return;
  }
  throw ArgumentError("unknown parameter id");
}

void SweepAxis::validate() const {
  const auto key = std::string(parameter_info(parameter).key);
  if (points < 1) throw ArgumentError("axis " + key + ": points must be at least 1");
  if (!std::isfinite(start) || !std::isfinite(stop))
    throw ArgumentError("axis " + key + ": bounds must be finite");
  if (points > 1 && !(start < stop))
    throw ArgumentError("axis " + key + ": start must be below stop");
  if (scale == AxisScale::log && start <= 0.0)
    throw ArgumentError("axis " + key + ": log scale requires a positive start");
  if (parameter_info(parameter).boolean)
    throw ArgumentError("axis " + key + ": boolean fields cannot be swept");
}

std::vector<double> SweepAxis::values(std::vector<std::string>* warnings) const {
  validate();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    if (points == 1) {
      out.push_back(start);
      break;
    }
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    double v = scale == AxisScale::linear
                   ? start + t * (stop - start)
                   : std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
    if (i == points - 1) v = stop;
    out.push_back(v);
  }
  if (parameter_info(parameter).integer) {
    for (auto& v : out) v = std::round(v);
    const auto before = out.size();
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() != before && warnings)
      warnings->push_back("axis " + std::string(parameter_info(parameter).key) + ": " +
                          std::to_string(before - out.size()) +
                          " duplicate integer samples collapsed");
  }
  return out;
}

}  // namespace ptmcom
