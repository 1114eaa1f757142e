#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptmcom/entanglement.hpp"
#include "ptmcom/params.hpp"
#include "ptmcom/spectra.hpp"

namespace ptmcom {

enum class Quantity {
  channels,     ///< full pipeline including the six negativities
  stability,    ///< steady state and verdict only
  intensity,    ///< same work as stability; kept separate for output selection
  eigenvalues,  ///< two-mode optical eigenvalues plus the full verdict
};

std::string_view to_string(Quantity q);
std::optional<Quantity> quantity_by_name(std::string_view name);

struct SweepRecord {
  double axis1 = 0.0;
  std::optional<double> axis2;
  bool stable = false;
  bool marginal = false;
  std::optional<ChannelSet> channels;
  double intensity_c = 0.0;
  std::size_t branch_count = 0;
  double max_real_part = 0.0;
  std::optional<double> physicality_margin;
  std::optional<PtPhase> pt_phase;
  std::string diagnostics;
};

struct SweepOptions {
  Quantity quantity = Quantity::channels;
  unsigned threads = 0;  ///< 0 = hardware concurrency
  PhysicalityPolicy policy = PhysicalityPolicy::strict;
};

/// Records in row-major order: axis1 is the outer index.
struct SweepGrid {
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  std::vector<double> values1;
  std::vector<double> values2;  ///< empty for a 1D sweep
  std::vector<SweepRecord> records;
  std::vector<std::string> warnings;

  bool two_dimensional() const { return axis2.has_value(); }
  std::size_t cols() const { return values2.empty() ? 1 : values2.size(); }
  const SweepRecord& at(std::size_t i, std::size_t j = 0) const { return records[i * cols() + j]; }
};

/// One cell of a sweep. Failures are recorded in `diagnostics`, never thrown.
SweepRecord evaluate_cell(const SystemParams& p, const SweepOptions& options);

SweepGrid run_sweep_1d(const SystemParams& base, const SweepAxis& axis,
                       const SweepOptions& options = {});

/// Throws ArgumentError when both axes address the same parameter.
SweepGrid run_sweep_2d(const SystemParams& base, const SweepAxis& axis1, const SweepAxis& axis2,
                       const SweepOptions& options = {});

struct OpaComparison {
  SweepGrid pt;
  SweepGrid opa;
};

/// Two drive sweeps over identical parameters: the first with the parametric
/// term switched off, the second with it on (opa_gain and opa_phase from base).
OpaComparison opa_comparison(const SystemParams& base, const SweepAxis& drive_axis,
                             const SweepOptions& options = {});

}  // namespace ptmcom
