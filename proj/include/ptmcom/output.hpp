#pragma once

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "ptmcom/entanglement.hpp"
#include "ptmcom/spectra.hpp"
#include "ptmcom/sweep.hpp"

namespace ptmcom {

/// Header of every sweep table.
inline constexpr const char* kCsvHeader =
    "axis1,axis2,stable,e_ac,e_aB1,e_cB2,e_B1B2,e_aB2,e_cB1,intensity_c,branch_count";

/// One row per record in the given order. Absent values are empty fields;
/// numbers use the shortest round-trip decimal form.
void write_csv(std::ostream& out, const std::vector<SweepRecord>& records);
void emit_csv(const std::vector<SweepRecord>& records, const std::string& path);

/// Same schema for a stability map (channels empty).
void write_csv(std::ostream& out, const StabilityMap& map);

/// Two-mode eigenvalue table: j1,discriminant,phase,re_plus,im_plus,re_minus,im_minus.
void write_ep_csv(std::ostream& out, const std::vector<double>& j1_values,
                  const std::vector<PtPhase>& phases);

/// Heatmap of one channel over a 2D grid. Cells are coloured on a linear ramp
/// through #440154, #21908d, #fde725 between the grid minimum and maximum over
/// cells that carry a value; unstable cells are hatched; stable cells without a
/// value are grey. Throws ArgumentError for a 1D grid.
void write_svg_heatmap(std::ostream& out, const SweepGrid& grid, Channel channel);
void emit_svg_heatmap(const SweepGrid& grid, Channel channel, const std::string& path);

/// Boolean stability map: stable cells use the low end of the ramp, unstable
/// cells are hatched.
void write_svg_stability(std::ostream& out, const StabilityMap& map);

struct LineSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  ///< NaN breaks the line
  std::string colour = "#000000";
  bool dashed = false;
};

void write_svg_lines(std::ostream& out, const std::vector<LineSeries>& series,
                     const std::string& x_label, const std::string& y_label);

/// Opens `path` for writing or throws IoError.
std::ofstream open_output(const std::string& path);

}  // namespace ptmcom
