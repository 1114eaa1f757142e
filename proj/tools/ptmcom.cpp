// Command-line front end: steady states, stability maps, exceptional-point
// scans, entanglement at a point, parameter sweeps and the OPA comparison.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "ptmcom/config.hpp"
#include "ptmcom/entanglement.hpp"
#include "ptmcom/errors.hpp"
#include "ptmcom/model.hpp"
#include "ptmcom/output.hpp"
#include "ptmcom/spectra.hpp"
#include "ptmcom/sweep.hpp"

using namespace ptmcom;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) file_ = open_output(path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void finish(const std::string& path) {
    if (file_ && !file_->flush()) throw IoError("write to '" + path + "' failed");
  }

 private:
  std::optional<std::ofstream> file_;
};

std::string svg_path(const RunConfig& cfg) {
  if (cfg.output_path.empty())
    throw ConfigError("emit_svg", 0, "--svg needs --output so the plot has a file name");
  const auto dot = cfg.output_path.find_last_of('.');
  const auto slash = cfg.output_path.find_last_of('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    return cfg.output_path.substr(0, dot) + ".svg";
  return cfg.output_path + ".svg";
}

SweepOptions sweep_options(const RunConfig& cfg) {
  SweepOptions o;
  o.quantity = cfg.quantity;
  o.threads = cfg.threads;
  o.policy = cfg.allow_unphysical ? PhysicalityPolicy::report : PhysicalityPolicy::strict;
  return o;
}

std::string key_of(ParameterId id) { return std::string(parameter_info(id).key); }

void run_steady(const RunConfig& cfg) {
  const SystemParams& p = cfg.params;
  const SteadyStateSet set = solve_mean_field(p);
  Sink sink(cfg.output_path);
  auto& out = sink.stream();
  out << "branch,intensity_c,effective_detuning_c,re_alpha_a,im_alpha_a,re_alpha_c,im_alpha_c,"
         "re_beta_1,im_beta_1,re_beta_2,im_beta_2,residual,stable,max_real_part\n";
  for (const auto& ss : set.states) {
    const StabilityVerdict v = full_stability(build_linearized(p, ss));
    out << to_string(ss.branch) << ',' << format_double(ss.intensity_c) << ','
        << format_double(ss.effective_detuning_c) << ',' << format_double(ss.alpha_a.real()) << ','
        << format_double(ss.alpha_a.imag()) << ',' << format_double(ss.alpha_c.real()) << ','
        << format_double(ss.alpha_c.imag()) << ',' << format_double(ss.beta_1.real()) << ','
        << format_double(ss.beta_1.imag()) << ',' << format_double(ss.beta_2.real()) << ','
        << format_double(ss.beta_2.imag()) << ',' << format_double(ss.residual) << ','
        << (v.stable ? 1 : 0) << ',' << format_double(v.max_real_part) << '\n';
  }
  sink.finish(cfg.output_path);
  if (set.states.empty()) std::cerr << "ptmcom: " << set.diagnostic << '\n';
}

void run_stability_map(const RunConfig& cfg) {
  const StabilityMap map = stability_map(cfg.params, cfg.axes[0], cfg.axes[1], cfg.threads);
  for (const auto& w : map.warnings) std::cerr << "ptmcom: warning: " << w << '\n';
  Sink sink(cfg.output_path);
  write_csv(sink.stream(), map);
  sink.finish(cfg.output_path);
  if (cfg.emit_svg) {
    const std::string path = svg_path(cfg);
    auto svg = open_output(path);
    write_svg_stability(svg, map);
  }
}

void run_ep_scan(const RunConfig& cfg) {
  const SweepAxis axis = cfg.axes.empty() ? SweepAxis{ParameterId::j1, 0.0, 3.0, 301} : cfg.axes[0];
  if (axis.parameter != ParameterId::j1)
    throw ConfigError("axis1", 0, "ep-scan sweeps j1; got " + key_of(axis.parameter));
  const std::vector<double> j1 = axis.values();
  const SystemParams& p = cfg.params;
  std::vector<PtPhase> phases;
  phases.reserve(j1.size());
  for (double v : j1) phases.push_back(two_mode_eigenvalues(p.delta_c, p.kappa_a, p.kappa_c, v, p.j2));
  Sink sink(cfg.output_path);
  write_ep_csv(sink.stream(), j1, phases);
  sink.finish(cfg.output_path);
  if (p.j2 > 0.0)
    std::cerr << "ptmcom: exceptional point at j1 = "
              << format_double(exceptional_point_j1(p.kappa_a, p.kappa_c, p.j2)) << '\n';
  if (cfg.emit_svg) {
    std::vector<LineSeries> series(4);
    series[0] = {"Re lambda+", j1, {}, "#1b9e77", false};
    series[1] = {"Re lambda-", j1, {}, "#d95f02", false};
    series[2] = {"Im lambda+", j1, {}, "#1b9e77", true};
    series[3] = {"Im lambda-", j1, {}, "#d95f02", true};
    for (const auto& ph : phases) {
      series[0].y.push_back(ph.lambda_plus.real());
      series[1].y.push_back(ph.lambda_minus.real());
      series[2].y.push_back(ph.lambda_plus.imag());
      series[3].y.push_back(ph.lambda_minus.imag());
    }
    const std::string path = svg_path(cfg);
    auto svg = open_output(path);
    write_svg_lines(svg, series, "j1", "eigenvalue");
  }
}

void run_entangle(const RunConfig& cfg) {
  ChannelOptions opts;
  opts.policy = cfg.allow_unphysical ? PhysicalityPolicy::report : PhysicalityPolicy::strict;
  const ChannelEvaluation ev = all_channels(cfg.params, opts);
  Sink sink(cfg.output_path);
  auto& out = sink.stream();
  out << "stable = " << (ev.stable() ? "true" : "false") << '\n';
  out << "branch_count = " << ev.point.branch_count << '\n';
  if (ev.point.verdict)
    out << "max_real_part = " << format_double(ev.point.verdict->max_real_part) << '\n';
  if (ev.point.steady_state)
    out << "intensity_c = " << format_double(ev.point.steady_state->intensity_c) << '\n';
  if (!ev.point.reason.empty()) out << "reason = " << ev.point.reason << '\n';
  if (ev.covariance) {
    out << "lyapunov_residual = " << format_double(ev.covariance->residual) << '\n';
    out << "physicality_margin = " << format_double(ev.covariance->physicality_margin) << '\n';
  }
  if (ev.channels)
    for (Channel ch : kAllChannels)
      out << to_string(ch) << " = " << format_double((*ev.channels)[ch]) << '\n';
  sink.finish(cfg.output_path);
}

void run_sweep(const RunConfig& cfg) {
  const SweepOptions opts = sweep_options(cfg);
  const SweepGrid grid = cfg.axes.size() == 2
                             ? run_sweep_2d(cfg.params, cfg.axes[0], cfg.axes[1], opts)
                             : run_sweep_1d(cfg.params, cfg.axes[0], opts);
  for (const auto& w : grid.warnings) std::cerr << "ptmcom: warning: " << w << '\n';
  Sink sink(cfg.output_path);
  write_csv(sink.stream(), grid.records);
  sink.finish(cfg.output_path);
  if (!cfg.emit_svg) return;
  const std::string path = svg_path(cfg);
  auto svg = open_output(path);
  const Channel channel = *channel_by_name(cfg.svg_channel);
  if (grid.two_dimensional()) {
    write_svg_heatmap(svg, grid, channel);
    return;
  }
  std::vector<LineSeries> series;
  const char* colours[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"};
  for (std::size_t k = 0; k < kAllChannels.size(); ++k) {
    LineSeries s{std::string(to_string(kAllChannels[k])), grid.values1, {}, colours[k], false};
    for (const auto& r : grid.records)
      s.y.push_back(r.channels ? (*r.channels)[kAllChannels[k]]
                               : std::numeric_limits<double>::quiet_NaN());
    series.push_back(std::move(s));
  }
  write_svg_lines(svg, series, key_of(grid.axis1.parameter), "log negativity");
}

void run_compare_opa(const RunConfig& cfg) {
  const SweepAxis axis = cfg.axes.empty() ? SweepAxis{ParameterId::drive, 0.0, 40.0, 41} : cfg.axes[0];
  SweepOptions opts = sweep_options(cfg);
  opts.quantity = Quantity::channels;
  const OpaComparison cmp = opa_comparison(cfg.params, axis, opts);
  auto field = [](const SweepRecord& r, Channel ch) {
    return r.channels ? format_double((*r.channels)[ch]) : std::string();
  };
  Sink sink(cfg.output_path);
  auto& out = sink.stream();
  out << key_of(axis.parameter)
      << ",pt_stable,pt_e_cB2,pt_e_B1B2,opa_stable,opa_e_cB2,opa_e_B1B2\n";
  for (std::size_t k = 0; k < cmp.pt.records.size(); ++k) {
    const SweepRecord& a = cmp.pt.records[k];
    const SweepRecord& b = cmp.opa.records[k];
    out << format_double(a.axis1) << ',' << (a.stable ? 1 : 0) << ',' << field(a, Channel::cB2)
        << ',' << field(a, Channel::B1B2) << ',' << (b.stable ? 1 : 0) << ','
        << field(b, Channel::cB2) << ',' << field(b, Channel::B1B2) << '\n';
  }
  sink.finish(cfg.output_path);
  if (!cfg.emit_svg) return;
  auto series_of = [&](const SweepGrid& g, Channel ch, const char* label, const char* colour,
                       bool dashed) {
    LineSeries s{label, g.values1, {}, colour, dashed};
    for (const auto& r : g.records)
      s.y.push_back(r.channels ? (*r.channels)[ch] : std::numeric_limits<double>::quiet_NaN());
    return s;
  };
  const std::string path = svg_path(cfg);
  auto svg = open_output(path);
  write_svg_lines(svg,
                  {series_of(cmp.pt, Channel::cB2, "E_cB2 PT", "#1b9e77", false),
                   series_of(cmp.pt, Channel::B1B2, "E_B1B2 PT", "#000000", false),
                   series_of(cmp.opa, Channel::cB2, "E_cB2 OPA", "#d62728", true),
                   series_of(cmp.opa, Channel::B1B2, "E_B1B2 OPA", "#1f77b4", true)},
                  key_of(axis.parameter), "log negativity");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady states, stability and entanglement of a two-cavity molecular "
               "optomechanical system"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::string> preset, axis1, axis2, quantity, output, svg_channel, threads;
  bool emit_svg = false;
  bool allow_unphysical = false;
  app.add_option("-c,--config", config_path, "key=value configuration file");
  app.add_option("--preset", preset, "named parameter set: baseline, bistability, thermal, "
                                     "opa_comparison, molecule_number");
  app.add_option("--axis1", axis1, "name:start:stop:points[:log]");
  app.add_option("--axis2", axis2, "name:start:stop:points[:log]");
  app.add_option("--quantity", quantity, "channels, stability, intensity or eigenvalues");
  app.add_option("-o,--output", output, "output file (default: standard output)");
  app.add_flag("--svg", emit_svg, "also write an SVG plot next to the output file");
  app.add_option("--svg-channel", svg_channel, "channel drawn in 2D heatmaps (default e_ac)");
  app.add_option("--threads", threads, "worker threads, 0 = all cores (env PTMCOM_THREADS)");
  app.add_flag("--allow-unphysical", allow_unphysical,
               "keep covariances that violate the uncertainty bound and report the margin");

  std::map<std::string, std::optional<std::string>> param_flags;
  for (const auto& info : parameter_table()) {
    auto& slot = param_flags[std::string(info.flag)];
    app.add_option("--" + std::string(info.flag), slot, std::string(info.key));
  }

  std::map<std::string, CLI::App*> subs;
  for (Command c : {Command::steady, Command::stability_map, Command::ep_scan, Command::entangle,
                    Command::sweep, Command::compare_opa})
    subs[std::string(to_string(c))] = app.add_subcommand(std::string(to_string(c)));
  subs["steady"]->description("mean-field steady states and their stability");
  subs["stability-map"]->description("stable/unstable map over two parameters");
  subs["ep-scan"]->description("two-mode optical eigenvalues against j1");
  subs["entangle"]->description("log negativity of all six bipartitions at one point");
  subs["sweep"]->description("1D or 2D sweep of entanglement, stability or intensity");
  subs["compare-opa"]->description("drive sweep with and without the parametric term");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    std::vector<ConfigEntry> overrides;
    for (const auto& [name, sub] : subs)
      if (sub->parsed()) overrides.push_back({"command", name, 0});
    if (preset) overrides.push_back({"preset", *preset, 0});
    for (const auto& [flag, value] : param_flags)
      if (value) overrides.push_back({flag, *value, 0});
    if (axis1) overrides.push_back({"axis1", *axis1, 0});
    if (axis2) overrides.push_back({"axis2", *axis2, 0});
    if (quantity) overrides.push_back({"quantity", *quantity, 0});
    if (output) overrides.push_back({"output", *output, 0});
    if (emit_svg) overrides.push_back({"emit_svg", "true", 0});
    if (svg_channel) overrides.push_back({"svg_channel", *svg_channel, 0});
    if (allow_unphysical) overrides.push_back({"allow_unphysical", "true", 0});
    if (threads)
      overrides.push_back({"threads", *threads, 0});
    else if (const char* env = std::getenv("PTMCOM_THREADS"); env && *env)
      overrides.push_back({"threads", env, 0});

    const RunConfig cfg =
        config_path.empty() ? parse_config("", overrides) : parse_config_file(config_path, overrides);

    switch (cfg.command) {
      case Command::steady: run_steady(cfg); break;
      case Command::stability_map: run_stability_map(cfg); break;
      case Command::ep_scan: run_ep_scan(cfg); break;
      case Command::entangle: run_entangle(cfg); break;
      case Command::sweep: run_sweep(cfg); break;
      case Command::compare_opa: run_compare_opa(cfg); break;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "ptmcom: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParameterError& e) {
    std::cerr << "ptmcom: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ArgumentError& e) {
    std::cerr << "ptmcom: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "ptmcom: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const UnphysicalStateError& e) {
    std::cerr << "ptmcom: numeric failure: " << e.what()
              << " (rerun with --allow-unphysical to keep the values)\n";
    return kExitNumeric;
  } catch (const Error& e) {
    std::cerr << "ptmcom: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}
