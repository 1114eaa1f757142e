#include "ptmcom/sweep.hpp"

#include "ptmcom/errors.hpp"
#include "ptmcom/parallel.hpp"

namespace ptmcom {

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::channels: return "channels";
    case Quantity::stability: return "stability";
    case Quantity::intensity: return "intensity";
    case Quantity::eigenvalues: return "eigenvalues";
  }
  return "?";
}

std::optional<Quantity> quantity_by_name(std::string_view name) {
  for (Quantity q : {Quantity::channels, Quantity::stability, Quantity::intensity,
                     Quantity::eigenvalues})
    if (to_string(q) == name) return q;
  return std::nullopt;
}

SweepRecord evaluate_cell(const SystemParams& p, const SweepOptions& options) {
  SweepRecord r;
  try {
    p.validate();
    if (options.quantity == Quantity::eigenvalues)
      r.pt_phase = two_mode_eigenvalues(p.delta_c, p.kappa_a, p.kappa_c, p.j1, p.j2);

    PointAnalysis point;
    if (options.quantity == Quantity::channels) {
      ChannelEvaluation ev = all_channels(p, ChannelOptions{options.policy, {}});
      point = std::move(ev.point);
      r.channels = ev.channels;
      if (ev.covariance) {
        r.physicality_margin = ev.covariance->physicality_margin;
        if (ev.covariance->physicality_margin < -kPhysicalityTolerance)
          r.diagnostics = "unphysical covariance (margin " +
                          std::to_string(ev.covariance->physicality_margin) + ")";
      }
    } else {
      point = analyze_point(p);
    }
    r.branch_count = point.branch_count;
    if (point.verdict) {
      r.stable = point.verdict->stable;
      r.marginal = point.verdict->marginal;
      r.max_real_part = point.verdict->max_real_part;
      r.intensity_c = point.steady_state->intensity_c;
    }
    if (!point.reason.empty()) r.diagnostics = point.reason;
  } catch (const UnphysicalStateError& e) {
    // Stability is known at this point; only the covariance is rejected.
    r.stable = true;
    r.channels.reset();
    r.physicality_margin = e.margin();
    r.diagnostics = e.what();
    try {
      const PointAnalysis point = analyze_point(p);
      r.branch_count = point.branch_count;
      r.marginal = point.verdict->marginal;
      r.max_real_part = point.verdict->max_real_part;
      r.intensity_c = point.steady_state->intensity_c;
    } catch (const Error&) {
    }
  } catch (const Error& e) {
    r.stable = false;
    r.channels.reset();
    r.diagnostics = e.what();
  }
  return r;
}

namespace {

SweepGrid run_grid(const SystemParams& base, const SweepAxis& axis1,
                   const std::optional<SweepAxis>& axis2, const SweepOptions& options) {
  SweepGrid grid;
  grid.axis1 = axis1;
  grid.axis2 = axis2;
  grid.values1 = axis1.values(&grid.warnings);
  if (axis2) grid.values2 = axis2->values(&grid.warnings);
  const std::size_t cols = grid.cols();
  grid.records.resize(grid.values1.size() * cols);
  parallel_for(grid.records.size(), options.threads, [&](std::size_t k) {
    SystemParams p = base;
    const double v1 = grid.values1[k / cols];
    set_parameter(p, axis1.parameter, v1);
    std::optional<double> v2;
    if (axis2) {
      v2 = grid.values2[k % cols];
      set_parameter(p, axis2->parameter, *v2);
    }
    SweepRecord r = evaluate_cell(p, options);
    r.axis1 = v1;
    r.axis2 = v2;
    grid.records[k] = std::move(r);
  });
  return grid;
}

}  // namespace

SweepGrid run_sweep_1d(const SystemParams& base, const SweepAxis& axis,
                       const SweepOptions& options) {
  return run_grid(base, axis, std::nullopt, options);
}

SweepGrid run_sweep_2d(const SystemParams& base, const SweepAxis& axis1, const SweepAxis& axis2,
                       const SweepOptions& options) {
  if (axis1.parameter == axis2.parameter)
    throw ArgumentError("run_sweep_2d: both axes address " +
                        std::string(parameter_info(axis1.parameter).key));
  return run_grid(base, axis1, axis2, options);
}

OpaComparison opa_comparison(const SystemParams& base, const SweepAxis& drive_axis,
                             const SweepOptions& options) {
  SystemParams pt = base;
  pt.opa_enabled = false;
  SystemParams opa = base;
  opa.opa_enabled = true;
  return {run_sweep_1d(pt, drive_axis, options), run_sweep_1d(opa, drive_axis, options)};
}

}  // namespace ptmcom
