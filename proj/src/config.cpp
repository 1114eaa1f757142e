#include "ptmcom/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ptmcom/errors.hpp"

namespace ptmcom {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(const ConfigEntry& e) {
  return e.line > 0 ? "line " + std::to_string(e.line) + ", key '" + e.key + "'"
                    : "flag --" + e.key;
}

[[noreturn]] void fail(const ConfigEntry& e, const std::string& what) {
  throw ConfigError(e.key, e.line, where(e) + ": " + what);
}

double parse_number(const ConfigEntry& e) {
  const std::string_view s = trim(e.value);
  double v = 0.0;
  const auto* begin = s.data();
  const auto* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
    fail(e, "malformed number '" + e.value + "'");
  return v;
}

long parse_count(const ConfigEntry& e) {
  const double v = parse_number(e);
  if (v != std::floor(v)) fail(e, "expected an integer, got '" + e.value + "'");
  if (std::abs(v) > 2e9) fail(e, "value out of range");
  return static_cast<long>(v);
}

bool parse_bool(const ConfigEntry& e) {
  const std::string_view s = trim(e.value);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  fail(e, "expected true or false, got '" + e.value + "'");
}

std::string normalize_key(std::string_view key) {
  std::string k(trim(key));
  if (k.rfind("--", 0) == 0) k.erase(0, 2);
  return k;
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::steady: return "steady";
    case Command::stability_map: return "stability-map";
    case Command::ep_scan: return "ep-scan";
    case Command::entangle: return "entangle";
    case Command::sweep: return "sweep";
    case Command::compare_opa: return "compare-opa";
  }
  return "?";
}

std::optional<Command> command_by_name(std::string_view name) {
  for (Command c : {Command::steady, Command::stability_map, Command::ep_scan, Command::entangle,
                    Command::sweep, Command::compare_opa})
    if (to_string(c) == name) return c;
  return std::nullopt;
}

std::pair<int, int> command_arity(Command c) {
  switch (c) {
    case Command::steady: return {0, 0};
    case Command::stability_map: return {2, 2};
    case Command::ep_scan: return {0, 1};
    case Command::entangle: return {0, 0};
    case Command::sweep: return {1, 2};
    case Command::compare_opa: return {0, 1};
  }
  return {0, 0};
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.key(), 0, std::string("invalid parameters: ") + e.what());
  }
  const auto [lo, hi] = command_arity(command);
  const int n = static_cast<int>(axes.size());
  if (n < lo || n > hi)
    throw ConfigError("axis", 0,
                      std::string(to_string(command)) + " takes " + std::to_string(lo) +
                          (lo == hi ? "" : "-" + std::to_string(hi)) + " axes, got " +
                          std::to_string(n));
  for (const auto& a : axes) {
    try {
      a.validate();
    } catch (const ArgumentError& e) {
      throw ConfigError("axis", 0, e.what());
    }
  }
  if (axes.size() == 2 && axes[0].parameter == axes[1].parameter)
    throw ConfigError("axis2", 0, "both axes address the same parameter");
  if (!channel_by_name(svg_channel))
    throw ConfigError("svg_channel", 0, "unknown channel '" + svg_channel + "'");
}

std::vector<ConfigEntry> read_config_entries(std::string_view text) {
  std::vector<ConfigEntry> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(std::string(line), line_no,
                        "line " + std::to_string(line_no) + ": expected key=value, got '" +
                            std::string(line) + "'");
    out.push_back({normalize_key(line.substr(0, eq)), std::string(trim(line.substr(eq + 1))), line_no});
    if (out.back().key.empty())
      throw ConfigError("", line_no, "line " + std::to_string(line_no) + ": empty key");
  }
  return out;
}

RunConfig parse_config(std::string_view text, const std::vector<ConfigEntry>& overrides) {
  std::vector<ConfigEntry> entries = read_config_entries(text);
  for (auto e : overrides) {
    e.key = normalize_key(e.key);
    e.line = 0;
    entries.push_back(std::move(e));
  }

  RunConfig cfg;
  // A preset replaces the parameter block, so it is applied before the rest.
  // The last preset wins, matching ordinary override precedence.
  for (const auto& e : entries) {
    if (e.key != "preset") continue;
    const auto p = presets::by_name(trim(e.value));
    if (!p) fail(e, "unknown preset '" + e.value + "'");
    cfg.params = *p;
  }

  std::map<std::string, const ConfigEntry*> last_set;
  std::optional<SweepAxis> axes[2];
  for (const auto& e : entries) {
    if (e.key == "preset") continue;
    if (const auto id = parameter_by_key(e.key)) {
      const ParameterInfo& info = parameter_info(*id);
      double v = 0.0;
      if (info.boolean)
        v = parse_bool(e) ? 1.0 : 0.0;
      else if (info.integer)
        v = static_cast<double>(parse_count(e));
      else
        v = parse_number(e);
      set_parameter(cfg.params, *id, v);
      if (*id == ParameterId::drive) {
        last_set["drive_a"] = &e;
        last_set["drive_c"] = &e;
      } else {
        last_set[std::string(info.key)] = &e;
      }
      continue;
    }
    const std::string& k = e.key;
    if (k == "command") {
      const auto c = command_by_name(trim(e.value));
      if (!c) fail(e, "unknown command '" + e.value + "'");
      cfg.command = *c;
    } else if (k == "axis1" || k == "axis2" || k == "axis") {
      SweepAxis axis;
      try {
        axis = parse_axis(e.value);
      } catch (const Error& err) {
        fail(e, err.what());
      }
      std::size_t slot = k == "axis2" ? 1 : 0;
      if (k == "axis") slot = axes[0] ? 1 : 0;
      axes[slot] = axis;
    } else if (k == "quantity") {
      const auto q = quantity_by_name(trim(e.value));
      if (!q) fail(e, "unknown quantity '" + e.value + "'");
      cfg.quantity = *q;
    } else if (k == "output" || k == "output_path") {
      cfg.output_path = std::string(trim(e.value));
    } else if (k == "emit_svg" || k == "emit-svg" || k == "svg") {
      cfg.emit_svg = parse_bool(e);
    } else if (k == "svg_channel" || k == "svg-channel" || k == "channel") {
      if (!channel_by_name(trim(e.value))) fail(e, "unknown channel '" + e.value + "'");
      cfg.svg_channel = std::string(to_string(*channel_by_name(trim(e.value))));
    } else if (k == "threads") {
      const long t = parse_count(e);
      if (t < 0 || t > 4096) fail(e, "threads must be in [0, 4096]");
      cfg.threads = static_cast<unsigned>(t);
    } else if (k == "allow_unphysical" || k == "allow-unphysical") {
      cfg.allow_unphysical = parse_bool(e);
    } else {
      fail(e, "unknown key");
    }
  }

  try {
    cfg.params.validate();
  } catch (const ParameterError& err) {
    const auto it = last_set.find(err.key());
    if (it != last_set.end()) fail(*it->second, std::string("out of range: ") + err.what());
    throw ConfigError(err.key(), 0, std::string("invalid parameters: ") + err.what());
  }
  if (axes[1] && !axes[0]) throw ConfigError("axis1", 0, "axis2 given without axis1");
  for (const auto& a : axes)
    if (a) cfg.axes.push_back(*a);
  cfg.validate();
  return cfg;
}

RunConfig parse_config_file(const std::string& path, const std::vector<ConfigEntry>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw ArgumentError("format_double: conversion failed");
  return std::string(buf, ptr);
}

SweepAxis parse_axis(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto colon = text.find(':', pos);
    parts.push_back(trim(text.substr(pos, colon == std::string_view::npos ? std::string_view::npos
                                                                          : colon - pos)));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() != 4 && parts.size() != 5)
    throw ArgumentError("axis '" + std::string(text) + "': expected name:start:stop:points[:log]");
  SweepAxis axis;
  const auto id = parameter_by_key(parts[0]);
  if (!id) throw ArgumentError("axis: unknown parameter '" + std::string(parts[0]) + "'");
  axis.parameter = *id;
  auto number = [&](std::string_view s, const char* what) {
    ConfigEntry e{std::string(what), std::string(s), 0};
    try {
      return parse_number(e);
    } catch (const ConfigError&) {
      throw ArgumentError("axis: malformed " + std::string(what) + " '" + std::string(s) + "'");
    }
  };
  axis.start = number(parts[1], "start");
  axis.stop = number(parts[2], "stop");
  const double pts = number(parts[3], "points");
  if (pts != std::floor(pts) || pts < 1 || pts > 1e7)
    throw ArgumentError("axis: points must be a positive integer");
  axis.points = static_cast<int>(pts);
  if (parts.size() == 5) {
    if (parts[4] == "log")
      axis.scale = AxisScale::log;
    else if (parts[4] != "linear")
      throw ArgumentError("axis: scale must be linear or log");
  }
  axis.validate();
  return axis;
}

std::string format_axis(const SweepAxis& axis) {
  std::string out(parameter_info(axis.parameter).key);
  out += ":" + format_double(axis.start) + ":" + format_double(axis.stop) + ":" +
         std::to_string(axis.points);
  if (axis.scale == AxisScale::log) out += ":log";
  return out;
}

std::string emit_config(const RunConfig& config) {
  std::ostringstream out;
  out << "command = " << to_string(config.command) << "\n";
  for (const auto& info : parameter_table()) {
    if (info.axis_only) continue;
    const double v = get_parameter(config.params, info.id);
    out << info.key << " = ";
    if (info.boolean)
      out << (v != 0.0 ? "true" : "false");
    else if (info.integer)
      out << static_cast<long>(v);
    else
      out << format_double(v);
    out << "\n";
  }
  for (std::size_t i = 0; i < config.axes.size(); ++i)
    out << "axis" << (i + 1) << " = " << format_axis(config.axes[i]) << "\n";
  out << "quantity = " << to_string(config.quantity) << "\n";
  if (!config.output_path.empty()) out << "output = " << config.output_path << "\n";
  out << "emit_svg = " << (config.emit_svg ? "true" : "false") << "\n";
  out << "svg_channel = " << config.svg_channel << "\n";
  out << "threads = " << config.threads << "\n";
  out << "allow_unphysical = " << (config.allow_unphysical ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace ptmcom
