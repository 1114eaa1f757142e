#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ptmcom/entanglement.hpp"
#include "ptmcom/params.hpp"
#include "ptmcom/sweep.hpp"

namespace ptmcom {

enum class Command { steady, stability_map, ep_scan, entangle, sweep, compare_opa };

std::string_view to_string(Command c);  ///< "steady", "stability-map", ...
std::optional<Command> command_by_name(std::string_view name);

/// Number of sweep axes a command takes: {min, max}.
std::pair<int, int> command_arity(Command c);

struct RunConfig {
  SystemParams params;
  Command command = Command::steady;
  std::vector<SweepAxis> axes;  ///< at most two
  Quantity quantity = Quantity::channels;
  std::string output_path;      ///< empty = standard output
  bool emit_svg = false;
  std::string svg_channel = "e_ac";
  unsigned threads = 0;
  bool allow_unphysical = false;

  /// Throws ConfigError naming the offending key.
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

/// A single key=value assignment and where it came from (line 0 = flag).
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

/// Splits key=value lines; '#' starts a comment; blank lines are skipped.
std::vector<ConfigEntry> read_config_entries(std::string_view text);

/// Applies file entries, then flag overrides, to the baseline defaults. A
/// "preset" entry anywhere resets the parameters before other keys apply. Keys
/// are field names ("kappa_a") or flag spellings ("kappa-a").
RunConfig parse_config(std::string_view text, const std::vector<ConfigEntry>& overrides = {});
RunConfig parse_config_file(const std::string& path, const std::vector<ConfigEntry>& overrides = {});

/// Text that parse_config maps back to exactly `config`.
std::string emit_config(const RunConfig& config);

/// "name:start:stop:points[:log|linear]".
SweepAxis parse_axis(std::string_view text);
std::string format_axis(const SweepAxis& axis);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

}  // namespace ptmcom
