// Acceptance suite. `ptmcom_acceptance N` runs criterion N and prints one
// PASS/FAIL line; without an argument every criterion runs in order. Lines
// starting with "  info:" are informational and never gate the result.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ptmcom/entanglement.hpp"
#include "ptmcom/model.hpp"
#include "ptmcom/output.hpp"
#include "ptmcom/spectra.hpp"
#include "ptmcom/sweep.hpp"

using namespace ptmcom;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

void info(const std::string& line) { std::cout << "  info: " << line << '\n'; }

constexpr Channel kPaperChannels[] = {Channel::ac, Channel::aB1, Channel::cB2, Channel::B1B2};

std::string channel_list(const ChannelSet& s) {
  std::string out;
  for (Channel ch : kPaperChannels) out += std::string(to_string(ch)) + "=" + fmt(s[ch]) + " ";
  return out;
}

// ---------------------------------------------------------------------------

Outcome ep_location() {
  const double ep = exceptional_point_j1(1.0, 0.1, 0.2);
  const double bis = exceptional_point_j1_bisection(1.0, 0.1, 0.2);
  Outcome o;
  o.pass = std::abs(ep - 1.5125) <= 1e-9 && std::abs(bis - ep) <= 1e-9;
  const PtPhase at = two_mode_eigenvalues(1.0, 1.0, 0.1, ep, 0.2);
  o.pass = o.pass && at.phase == PtPhaseKind::at_ep;
  o.detail = "closed form " + fmt(ep) + ", bisection " + fmt(bis);
  return o;
}

Outcome two_mode_oracle() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> pos(0.0, 2.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double d = u(rng), ka = pos(rng), kc = u(rng), j1 = pos(rng), j2 = pos(rng);
    const PtPhase ph = two_mode_eigenvalues(d, ka, kc, j1, j2);
    const auto ev = eigenvalues_general(two_mode_generator(d, ka, kc, j1, j2));
    for (Complex l : {ph.lambda_plus, ph.lambda_minus})
      worst = std::max(worst, std::min(std::abs(l - ev[0]), std::abs(l - ev[1])));
  }
  return {worst <= 1e-12, "max deviation " + fmt(worst) + " over 1000 inputs"};
}

std::vector<SystemParams> figure_points() {
  std::vector<SystemParams> pts = {presets::baseline(), presets::bistability(), presets::thermal(),
                                   presets::molecule_number()};
  SystemParams opa = presets::opa_comparison();
  pts.push_back(opa);
  opa.opa_enabled = true;
  pts.push_back(opa);
  SystemParams hot = presets::thermal();
  hot.temperature = 700.0;
  pts.push_back(hot);
  return pts;
}

Outcome lyapunov_residual_check() {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const Mat8 m = oracle::random_stable(rng, 8, 0.05);
    Mat8 b;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) b(i, j) = nd(rng);
    const Mat8 d = b * b.transpose();
    const Mat8 v = solve_lyapunov(m, d);
    worst = std::max(worst, lyapunov_residual(m, v, d) / std::max(1.0, d.norm()));
  }
  int points = 0;
  double worst_fig = 0.0;
  for (const SystemParams& p : figure_points()) {
    const PointAnalysis a = analyze_point(p);
    if (!a.stable()) continue;
    const CovarianceMatrix cov = steady_covariance(*a.linearized, PhysicalityPolicy::report);
    worst_fig = std::max(worst_fig, cov.residual / std::max(1.0, a.linearized->diffusion.norm()));
    ++points;
  }
  return {worst <= 1e-10 && worst_fig <= 1e-10 && points > 0,
          "worst scaled residual random " + fmt(worst) + ", figure points (" +
              std::to_string(points) + ") " + fmt(worst_fig)};
}

Outcome tmsv_negativity() {
  double worst = 0.0;
  for (double r : {0.1, 0.5, 1.0, 2.0}) worst = std::max(worst, std::abs(log_negativity(oracle::tmsv(r)) - 2 * r));
  bool zeros = log_negativity(Mat4(0.5 * Mat4::Identity())) == 0.0;
  std::mt19937_64 rng(4);
  for (int k = 0; k < 1000; ++k) {
    Mat4 v = oracle::random_physical_two_mode(rng);
    v.block<2, 2>(0, 2).setZero();
    v.block<2, 2>(2, 0).setZero();
    zeros = zeros && log_negativity(v) == 0.0;
  }
  return {worst <= 1e-9 && zeros, "max |E - 2r| " + fmt(worst) + (zeros ? ", vacuum/product exact 0" : ", nonzero product state")};
}

SystemParams random_params(std::mt19937_64& rng, bool opa) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SystemParams p;
  p.kappa_a = 0.3 + 1.2 * u(rng);
  p.kappa_c = -0.3 + 0.5 * u(rng);
  p.delta_a = 0.5 + u(rng);
  p.delta_c = 0.5 + u(rng);
  p.gamma_1 = std::pow(10.0, -4.0 + 2.0 * u(rng));
  p.gamma_2 = std::pow(10.0, -4.0 + 2.0 * u(rng));
  p.j1 = 1.5 * u(rng);
  p.j2 = u(rng);
  p.g_m = std::pow(10.0, -3.5 + u(rng));
  p.drive_a = p.drive_c = 1.0 + 29.0 * u(rng);
  p.drive_phase = 6.0 * u(rng);
  p.n_total = 50 + static_cast<int>(200 * u(rng));
  p.m_partition = 1 + static_cast<int>((p.n_total - 1) * u(rng));
  p.opa_enabled = opa;
  p.opa_gain = opa ? 0.3 * u(rng) : 0.0;
  p.opa_phase = opa ? 6.0 * u(rng) : 0.0;
  return p;
}

Outcome drift_jacobian() {
  std::mt19937_64 rng(5);
  int sets = 0, opa_sets = 0, states = 0;
  double worst = 0.0;
  for (int attempt = 0; sets < 200 && attempt < 20000; ++attempt) {
    const bool opa = attempt % 2 == 1;
    const SystemParams p = random_params(rng, opa);
    SteadyStateSet set;
    try {
      set = opa ? solve_steady_state_opa(p) : solve_steady_states(p);
    } catch (const Error&) {
      continue;
    }
    bool any_stable = false;
    for (const auto& s : set.states) any_stable = any_stable || full_stability(build_linearized(p, s)).stable;
    if (!any_stable) continue;
    ++sets;
    opa_sets += opa;
    for (const auto& s : set.states) {
      const LinearizedSystem ls = build_linearized(p, s);
      const auto [q, g] = gauge_fixed(p, s);
      const Mat8 jac = oracle::numerical_jacobian(q, to_state(g));
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
          worst = std::max(worst, std::abs(jac(i, j) - ls.drift(i, j)) / std::max(1.0, std::abs(ls.drift(i, j))));
      ++states;
    }
  }
  return {sets == 200 && opa_sets > 0 && worst <= 1e-6,
          std::to_string(sets) + " stable sets (" + std::to_string(opa_sets) + " with OPA), " +
              std::to_string(states) + " states, worst relative deviation " + fmt(worst)};
}

Outcome cubic_fixed_points() {
  Outcome o;
  double worst_residual = 0.0;
  int roots = 0, stable_checked = 0;
  double worst_return = 0.0;
  bool window = false;
  double window_lo = 0.0, window_hi = 0.0;
  // detuning scan of the bistability point, then the baseline point whose
  // lower branch is stable
  for (int k = 0; k <= 41; ++k) {
    SystemParams p = presets::bistability();
    p.delta_c = -1.0 + 0.1 * k;
    if (k == 41) p = presets::baseline();
    const SteadyStateSet set = solve_steady_states(p);
    if (k < 41 && set.states.size() == 3) {
      if (!window) window_lo = p.delta_c;
      window = true;
      window_hi = p.delta_c;
    }
    for (const auto& s : set.states) {
      ++roots;
      worst_residual = std::max(worst_residual, s.residual);
      const StabilityVerdict v = full_stability(build_linearized(p, s));
      if (!v.stable) continue;
      auto x0 = to_state(s);
      for (auto& x : x0) x += 1e-4;
      const double t_end = 16.0 / -v.max_real_part;
      const auto traj = integrate_mean_field(p, x0, {t_end, 0.05, 1 << 30});
      double dist = 0.0;
      const auto target = to_state(s);
      for (std::size_t i = 0; i < target.size(); ++i)
        dist = std::max(dist, std::abs(traj.states.back()[i] - target[i]));
      worst_return = std::max(worst_return, dist);
      ++stable_checked;
    }
  }
  o.pass = worst_residual <= 1e-8 && worst_return <= 1e-6 && window;
  o.detail = std::to_string(roots) + " roots, max residual " + fmt(worst_residual) + "; " +
             std::to_string(stable_checked) + " stable branches, worst return distance " +
             fmt(worst_return) + "; three-root window " +
             (window ? "delta_c in [" + fmt(window_lo) + ", " + fmt(window_hi) + "]" : "not found");
  return o;
}

Outcome thermal_occupation_check() {
  SystemParams p;
  p.temperature = 312.0;
  const double n312 = thermal_occupation(p);
  p.temperature = 700.0;
  const double n700 = thermal_occupation(p);
  p.temperature = 0.0;
  const double n0 = thermal_occupation(p);
  const double o312 = oracle::thermal_occupation(kDefaultVibrationalFrequency, 312.0);
  const double o700 = oracle::thermal_occupation(kDefaultVibrationalFrequency, 700.0);
  const bool pass = std::abs(n312 - o312) <= 0.01 * o312 && std::abs(n700 - o700) <= 0.01 * o700 &&
                    std::abs(n312 - 1.00e-2) <= 0.01 * 1.00e-2 &&
                    std::abs(n700 - 0.1466) <= 0.01 * 0.1466 && n0 == 0.0;
  return {pass, "n(312 K)=" + fmt(n312) + " n(700 K)=" + fmt(n700) + " n(0)=" + fmt(n0)};
}

// Smallest drive on the grid at which the point is not stable; +inf if none.
std::vector<double> drive_thresholds(const StabilityMap& map) {
  std::vector<double> out;
  for (std::size_t i = 0; i < map.values1.size(); ++i) {
    double t = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < map.values2.size(); ++j)
      if (!map.at(i, j).stable) {
        t = map.values2[j];
        break;
      }
    out.push_back(t);
  }
  return out;
}

std::string list(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += fmt(x) + " ";
  return s;
}

Outcome stability_trends() {
  const SweepAxis drive{ParameterId::drive, 0.0, 40.0, 21};
  const SystemParams base = presets::baseline();
  const auto by_n = drive_thresholds(stability_map(base, {ParameterId::n_total, 50, 250, 21}, drive, 0));
  const auto by_j1 = drive_thresholds(stability_map(base, {ParameterId::j1, 0.0, 3.0, 21}, drive, 0));
  bool n_ok = true, j_ok = true;
  for (std::size_t k = 1; k < by_n.size(); ++k) n_ok = n_ok && by_n[k] <= by_n[k - 1];
  for (std::size_t k = 1; k < by_j1.size(); ++k) j_ok = j_ok && by_j1[k] >= by_j1[k - 1];
  info("threshold vs n_total 50..250: " + list(by_n));
  info("threshold vs j1 0..3: " + list(by_j1));
  return {n_ok && j_ok, std::string("n_total trend ") + (n_ok ? "non-increasing" : "violated") +
                            ", j1 trend " + (j_ok ? "non-decreasing" : "violated")};
}

Outcome nonreciprocity_ordering() {
  SystemParams nr = presets::baseline();
  SystemParams rc = presets::baseline();
  rc.j1 = rc.j2 = 0.4;
  for (PhysicalityPolicy policy : {PhysicalityPolicy::report}) {
    const auto a = all_channels(nr, {policy, {}});
    const auto b = all_channels(rc, {policy, {}});
    if (a.channels && b.channels)
      info("report policy: nonreciprocal " + channel_list(*a.channels) + "(margin " +
           fmt(a.covariance->physicality_margin) + "); reciprocal e_ac=" + fmt(b.channels->e_ac) +
           " (margin " + fmt(b.covariance->physicality_margin) + ")");
  }
  ChannelEvaluation a, b;
  try {
    a = all_channels(nr);
    b = all_channels(rc);
  } catch (const UnphysicalStateError& e) {
    return {false, std::string("strict policy: ") + e.what()};
  }
  if (!a.channels || !b.channels) return {false, "a comparison point is unstable"};
  bool positive = true;
  for (Channel ch : kPaperChannels) positive = positive && (*a.channels)[ch] > 0.0;
  const bool order = a.channels->e_ac > b.channels->e_ac;
  return {positive && order, channel_list(*a.channels) + "; reciprocal e_ac=" + fmt(b.channels->e_ac)};
}

Outcome thermal_persistence() {
  SystemParams base = presets::thermal();
  // coarse partition scan; selection only, so the report policy is used here
  int best_m = base.m_partition;
  double best = -1.0;
  for (int m = 10; m <= 90; m += 10) {
    SystemParams p = base;
    p.m_partition = m;
    const auto ev = all_channels(p, {PhysicalityPolicy::report, {}});
    if (!ev.channels) continue;
    double worst = std::numeric_limits<double>::infinity();
    for (Channel ch : kPaperChannels) worst = std::min(worst, (*ev.channels)[ch]);
    if (worst > best) {
      best = worst;
      best_m = m;
    }
  }
  base.m_partition = best_m;
  info("partition chosen by coarse scan: m_partition=" + std::to_string(best_m));

  std::vector<ChannelSet> grid;
  std::string report_line;
  for (int k = 0; k <= 10; ++k) {
    SystemParams p = base;
    p.temperature = 100.0 + 60.0 * k;
    const auto ev = all_channels(p, {PhysicalityPolicy::report, {}});
    if (ev.channels)
      report_line += fmt(p.temperature) + "K:" + fmt(ev.channels->e_ac) + "/m=" +
                     fmt(ev.covariance->physicality_margin) + " ";
  }
  info("report policy e_ac and margin by temperature: " + report_line);

  try {
    for (double t : {312.0, 500.0}) {
      SystemParams p = base;
      p.temperature = t;
      const auto ev = all_channels(p);
      if (!ev.channels) return {false, "unstable at " + fmt(t) + " K"};
      for (Channel ch : kPaperChannels)
        if (!((*ev.channels)[ch] > 0.0))
          return {false, std::string(to_string(ch)) + " not positive at " + fmt(t) + " K: " +
                             channel_list(*ev.channels)};
    }
    for (int k = 0; k <= 10; ++k) {
      SystemParams p = base;
      p.temperature = 100.0 + 60.0 * k;
      const auto ev = all_channels(p);
      if (!ev.channels) return {false, "unstable at " + fmt(p.temperature) + " K"};
      grid.push_back(*ev.channels);
    }
  } catch (const UnphysicalStateError& e) {
    return {false, std::string("strict policy: ") + e.what()};
  }
  for (std::size_t k = 1; k < grid.size(); ++k)
    for (Channel ch : kPaperChannels)
      if (grid[k][ch] > grid[k - 1][ch])
        return {false, std::string(to_string(ch)) + " increases with temperature"};
  return {true, "m_partition=" + std::to_string(best_m) + ", all channels positive and non-increasing"};
}

Outcome opa_ordering() {
  const SweepAxis axis{ParameterId::drive, 0.0, 40.0, 41};
  {
    SweepOptions report;
    report.policy = PhysicalityPolicy::report;
    const OpaComparison cmp = opa_comparison(presets::opa_comparison(), axis, report);
    double pt_max = 0.0, opa_max = 0.0, ratio_min = std::numeric_limits<double>::infinity();
    int ordered = 0, compared = 0;
    for (std::size_t k = 0; k < cmp.pt.records.size(); ++k) {
      const auto& a = cmp.pt.records[k];
      const auto& b = cmp.opa.records[k];
      if (a.channels) pt_max = std::max(pt_max, a.channels->e_B1B2);
      if (b.channels) opa_max = std::max(opa_max, b.channels->e_B1B2);
      if (!a.channels || !b.channels) continue;
      ++compared;
      ordered += a.channels->e_cB2 > b.channels->e_cB2;
      if (b.channels->e_cB2 > 0.0) ratio_min = std::min(ratio_min, a.channels->e_cB2 / b.channels->e_cB2);
    }
    info("report policy: e_cB2 ordered at " + std::to_string(ordered) + "/" + std::to_string(compared) +
         " points, min ratio " + fmt(ratio_min) + "; peak e_B1B2 PT " + fmt(pt_max) + " OPA " +
         fmt(opa_max) + " (ratio " + fmt(opa_max > 0 ? pt_max / opa_max : 0.0) + ")");
  }

  const OpaComparison cmp = opa_comparison(presets::opa_comparison(), axis, {});
  double pt_max = 0.0, opa_max = 0.0;
  int compared = 0;
  for (std::size_t k = 0; k < cmp.pt.records.size(); ++k) {
    const auto& a = cmp.pt.records[k];
    const auto& b = cmp.opa.records[k];
    if (!a.stable || !b.stable) continue;
    if (!a.channels || !b.channels)
      return {false, "drive " + fmt(a.axis1) + ": no channels (" +
                         (a.channels ? b.diagnostics : a.diagnostics) + ")"};
    if (!(a.channels->e_cB2 > b.channels->e_cB2))
      return {false, "drive " + fmt(a.axis1) + ": PT e_cB2 " + fmt(a.channels->e_cB2) +
                         " <= OPA " + fmt(b.channels->e_cB2)};
    pt_max = std::max(pt_max, a.channels->e_B1B2);
    opa_max = std::max(opa_max, b.channels->e_B1B2);
    ++compared;
  }
  return {compared > 0 && pt_max > opa_max,
          std::to_string(compared) + " jointly stable points; peak e_B1B2 PT " + fmt(pt_max) +
              " OPA " + fmt(opa_max)};
}

Outcome determinism() {
  const SweepAxis j1{ParameterId::j1, 0.0, 2.0, 101};
  const SweepAxis j2{ParameterId::j2, 0.0, 1.0, 101};
  std::string csv[2];
  const unsigned workers[2] = {1, 8};
  for (int k = 0; k < 2; ++k) {
    SweepOptions opt;
    opt.threads = workers[k];
    std::ostringstream out;
    write_csv(out, run_sweep_2d(presets::baseline(), j1, j2, opt).records);
    csv[k] = out.str();
  }
  return {csv[0] == csv[1], std::to_string(csv[0].size()) + " bytes with 1 worker, " +
                                std::to_string(csv[1].size()) + " with 8"};
}

Outcome routh_agreement() {
  std::mt19937_64 rng(13);
  int compared = 0, agreed = 0, skipped = 0;
  std::string first_mismatch;
  while (compared < 1000) {
    const SystemParams p = random_params(rng, compared % 3 == 0);
    SteadyStateSet set;
    try {
      set = p.opa_enabled ? solve_steady_state_opa(p) : solve_steady_states(p);
    } catch (const Error&) {
      continue;
    }
    for (const auto& s : set.states) {
      if (compared >= 1000) break;
      const Mat8 m = build_linearized(p, s).drift;
      const auto ev = eigenvalues_general(m);
      double top = -std::numeric_limits<double>::infinity();
      for (Complex l : ev) top = std::max(top, l.real());
      if (std::abs(top) <= kMarginalBand) {
        ++skipped;
        continue;
      }
      const RouthResult r = routh_hurwitz(char_poly(m));
      ++compared;
      if (r.stable == (top < 0.0))
        ++agreed;
      else if (first_mismatch.empty())
        first_mismatch = "; first mismatch max Re " + fmt(top);
    }
  }
  return {agreed == compared, std::to_string(agreed) + "/" + std::to_string(compared) +
                                  " agree, " + std::to_string(skipped) + " marginal skipped" +
                                  first_mismatch};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"exceptional point location", 1.0, ep_location},
      {"two-mode eigenvalue oracle", 1.0, two_mode_oracle},
      {"Lyapunov residual", 5.0, lyapunov_residual_check},
      {"two-mode squeezed vacuum negativity", 1.0, tmsv_negativity},
      {"drift equals mean-field Jacobian", 30.0, drift_jacobian},
      {"cubic roots are fixed points", 60.0, cubic_fixed_points},
      {"thermal occupation", 1.0, thermal_occupation_check},
      {"stability-map trends", 120.0, stability_trends},
      {"nonreciprocity ordering", 5.0, nonreciprocity_ordering},
      {"thermal persistence", 60.0, thermal_persistence},
      {"OPA comparison ordering", 60.0, opa_ordering},
      {"sweep determinism", 300.0, determinism},
      {"Routh-Hurwitz agreement", 10.0, routh_agreement},
  };
  return list;
}

bool run_one(std::size_t n) {
  const Criterion& c = criteria()[n - 1];
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = dt <= c.budget_s;
  const bool pass = o.pass && in_time;
  std::cout << "criterion " << n << ": " << (pass ? "PASS" : "FAIL") << "  " << c.name << "  ("
            << o.detail << "; " << fmt(dt) << " s of " << fmt(c.budget_s) << " s"
            << (in_time ? "" : ", over budget") << ")\n";
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t count = criteria().size();
  if (argc > 2) {
    std::cerr << "usage: ptmcom_acceptance [criterion 1.." << count << "]\n";
    return 2;
  }
  if (argc == 2) {
    char* end = nullptr;
    const long n = std::strtol(argv[1], &end, 10);
    if (*end != '\0' || n < 1 || n > static_cast<long>(count)) {
      std::cerr << "ptmcom_acceptance: criterion must be 1.." << count << '\n';
      return 2;
    }
    return run_one(static_cast<std::size_t>(n)) ? 0 : 1;
  }
  bool all = true;
  for (std::size_t n = 1; n <= count; ++n) all = run_one(n) && all;
  return all ? 0 : 1;
}
