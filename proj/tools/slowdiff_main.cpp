// slowdiff: construct slow volume-preserving skew products over circle
// rotations, scan their growth sequence, and verify volume and flux claims.
//
// Subcommands: weyl, growth, orbit, flux, volcheck, check.
// Every run writes its artifacts atomically plus a manifest.json (config echo,
// versions, timing). Identical config+seed produce byte-identical result files
// for any thread count.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "slowdiff/circle.hpp"
#include "slowdiff/config.hpp"
#include "slowdiff/flux.hpp"
#include "slowdiff/growth.hpp"
#include "slowdiff/invariants.hpp"
#include "slowdiff/io.hpp"
#include "slowdiff/kernels/trig_scan.hpp"
#include "slowdiff/parallel.hpp"
#include "slowdiff/sphere.hpp"
#include "slowdiff/version.hpp"
#include "slowdiff/volume.hpp"
#include "slowdiff/weyl.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace slowdiff;

namespace {

struct GlobalOpts {
  std::string config_path;
  std::string out_dir;
  std::int64_t seed = -1;  // -1: keep the config's seed
  int threads = 0;
  std::string kernel = "auto";
};

RunConfig load_effective_config(const GlobalOpts& g) {
  RunConfig cfg;
  if (!g.config_path.empty()) cfg = load_config(g.config_path);
  if (g.seed >= 0) cfg.seed = static_cast<std::uint64_t>(g.seed);
  if (!g.out_dir.empty()) cfg.output = g.out_dir;
  if (g.threads > 0) par::set_max_threads(g.threads);
  if (g.kernel == "scalar") {
    kernels::force_backend(kernels::Backend::Scalar);
  } else if (g.kernel == "avx2") {
    kernels::force_backend(kernels::Backend::Avx2);
  }
  return cfg;
}

void write_manifest(const RunConfig& cfg, const std::string& subcommand,
                    const std::vector<std::string>& outputs, double wall_s) {
  ordered_json m;
  m["tool"] = "slowdiff";
  m["version"] = kVersion;
  m["subcommand"] = subcommand;
  m["kernel"] = kernels::backend_name();
  m["threads"] = par::max_threads();
  m["wall_time_s"] = wall_s;
  m["outputs"] = outputs;
  m["config"] = config_echo(cfg);
  write_file_atomic(fs::path(cfg.output) / "manifest.json", m.dump(2) + "\n");
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::string join_u(const std::vector<double>& u) {
  std::string s;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) s += ';';
    s += fmt_g17(u[i]);
  }
  return s;
}

int run_weyl(const RunConfig& cfg, std::int64_t n, std::int64_t grid) {
  Timer timer;
  const WeylScanResult r = weyl_extrema(cfg.map.F, cfg.map.alpha, n,
                                        grid > 0 ? grid : cfg.grids.phi_grid);
  CsvWriter csv({"N", "grid_size", "max_abs_W", "max_abs_Wprime", "argmax_x", "mean_W"});
  csv.add_row({std::to_string(r.N), std::to_string(r.grid_size), fmt_g17(r.max_abs_W),
               fmt_g17(r.max_abs_Wprime), fmt_g17(r.argmax_x), fmt_g17(r.mean_W)});
  write_file_atomic(fs::path(cfg.output) / "weyl.csv", csv.str());
  write_manifest(cfg, "weyl", {"weyl.csv"}, timer.seconds());
  std::printf("weyl N=%lld grid=%lld max|W|=%.6g max|W'|=%.6g\n",
              static_cast<long long>(r.N), static_cast<long long>(r.grid_size), r.max_abs_W,
              r.max_abs_Wprime);
  return 0;
}

int run_growth(const RunConfig& cfg, const std::string& schedule_arg,
               const std::string& psi_arg) {
  Timer timer;
  std::vector<std::int64_t> schedule = cfg.schedule;
  if (!schedule_arg.empty()) schedule = parse_schedule(nlohmann::json(schedule_arg));
  PsiSpec psi = cfg.psi;
  if (!psi_arg.empty()) psi = parse_psi(nlohmann::json(psi_arg));

  const GrowthSeries s = gamma_series(cfg.map, schedule, cfg.grids, psi);

  CsvWriter csv({"n", "gamma", "ratio", "argmax_phi1", "argmax_u", "psi"});
  for (const auto& e : s.entries) {
    csv.add_row({std::to_string(e.n), fmt_g17(e.gamma), fmt_g17(e.ratio),
                 fmt_g17(e.argmax.phi1), join_u(e.argmax.u),
                 fmt_g17(psi.eval(static_cast<double>(e.n)))});
  }
  write_file_atomic(fs::path(cfg.output) / "growth.csv", csv.str());

  ordered_json summary;
  summary["norm"] = "max-row-sum";
  summary["psi"] = s.psi;
  summary["phi_grid"] = s.phi_grid;
  summary["u_grid"] = s.u_grid;
  summary["sup_ratio_tail"] = s.sup_ratio_tail;
  summary["inf_ratio_tail"] = s.inf_ratio_tail;
  summary["verdict"] = verdict_name(s.verdict);
  summary["range_note"] = "verdict holds over the tested schedule only";
  if (cfg.map.alpha.degenerate()) summary["alpha_degenerate"] = true;
  write_file_atomic(fs::path(cfg.output) / "growth_summary.json", summary.dump(2) + "\n");

  write_manifest(cfg, "growth", {"growth.csv", "growth_summary.json"}, timer.seconds());
  std::printf("growth: %zu schedule points, verdict=%s, tail ratio in [%.4g, %.4g]\n",
              s.entries.size(), verdict_name(s.verdict), s.inf_ratio_tail, s.sup_ratio_tail);
  return 0;
}

int run_orbit(const RunConfig& cfg, const std::string& point_arg, std::int64_t steps) {
  Timer timer;
  std::vector<double> coords;
  {
    std::string rest = point_arg;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      std::size_t next = rest.find(',', pos);
      if (next == std::string::npos) next = rest.size();
      coords.push_back(std::stod(rest.substr(pos, next - pos)));
      pos = next + 1;
      if (next == rest.size()) break;
    }
  }
  std::vector<std::string> outputs;
  if (cfg.map.variant == MapVariant::Chart) {
    if (coords.size() != static_cast<std::size_t>(cfg.map.dim()) + 2) {
      throw std::invalid_argument("orbit: chart point needs phi1,phi2,u1..ud");
    }
    std::vector<double> u(coords.begin() + 2, coords.end());
    ChartPoint p = make_chart_point(coords[0], coords[1], std::move(u));
    CsvWriter csv({"step", "phi1", "phi2", "u", "branch"});
    for (std::int64_t k = 0; k <= steps; ++k) {
      const ChartPoint q = f1_iterate_closed(cfg.map, k, p);
      csv.add_row({std::to_string(k), fmt_g17(q.phi1), fmt_g17(q.phi2), join_u(q.u), "chart"});
    }
    write_file_atomic(fs::path(cfg.output) / "orbit.csv", csv.str());
    outputs.push_back("orbit.csv");
  } else {
    if (coords.size() != 3) throw std::invalid_argument("orbit: sphere point needs lambda,theta,z");
    SpherePoint p = std::fabs(coords[2]) >= 1.0
                        ? SpherePoint::pole(coords[0], coords[2] >= 0 ? 1 : -1)
                        : SpherePoint::chart(coords[0], coords[1], coords[2]);
    CsvWriter csv({"step", "lambda", "theta", "z", "branch"});
    for (std::int64_t k = 0; k <= steps; ++k) {
      const SpherePoint q = example_apply(cfg.map, k, p);
      csv.add_row({std::to_string(k), fmt_g17(q.lambda), q.is_pole() ? "" : fmt_g17(q.theta),
                   fmt_g17(q.z), q.is_pole() ? "pole" : "chart"});
    }
    write_file_atomic(fs::path(cfg.output) / "orbit.csv", csv.str());
    outputs.push_back("orbit.csv");
  }
  write_manifest(cfg, "orbit", outputs, timer.seconds());
  return 0;
}

ordered_json flux_to_json(const FluxReport& r) {
  ordered_json j;
  j["value"] = r.value;
  j["value_mod1"] = r.value_mod1;
  j["method"] = r.method;
  j["abs_error_estimate"] = r.abs_error_estimate;
  j["cycle"] = r.cycle;
  if (r.has_analytic) j["analytic_value"] = r.analytic_value;
  if (r.flagged) j["flag"] = r.flag;
  return j;
}

int run_flux(const RunConfig& cfg, const std::string& variant) {
  Timer timer;
  FluxReport r;
  if (variant == "loop") {
    r = generator_loop_flux();
  } else if (variant == "example1") {
    MapConfig m = cfg.map;
    m.variant = MapVariant::Example1;
    r = flux_example1(m);
  } else if (variant == "example2") {
    MapConfig m = cfg.map;
    m.variant = MapVariant::Example2;
    r = flux_example2(m);
  } else {
    throw std::invalid_argument("flux: variant must be example1|example2|loop");
  }
  ordered_json j = flux_to_json(r);
  j["variant"] = variant;
  write_file_atomic(fs::path(cfg.output) / "flux.json", j.dump(2) + "\n");
  write_manifest(cfg, "flux", {"flux.json"}, timer.seconds());
  std::printf("flux %s: value_mod1=%.12g (%s)\n", variant.c_str(), r.value_mod1,
              r.flagged ? r.flag.c_str() : "ok");
  return 0;
}

int run_volcheck(const RunConfig& cfg, std::int64_t m, std::int64_t samples, int bins) {
  Timer timer;
  const VolumeTestReport r =
      volume_pushforward_test(cfg.map, m, samples, bins, cfg.seed);
  ordered_json j;
  j["variant"] = r.variant;
  j["iterate_m"] = r.iterate_m;
  j["n_samples"] = r.n_samples;
  j["bins_per_axis"] = r.bins_per_axis;
  j["n_bins"] = r.n_bins;
  j["max_bin_deviation_sigma"] = r.max_bin_deviation_sigma;
  j["seed"] = r.seed;
  j["pass_4sigma"] = r.max_bin_deviation_sigma <= 4.0;
  write_file_atomic(fs::path(cfg.output) / "volcheck.json", j.dump(2) + "\n");
  write_manifest(cfg, "volcheck", {"volcheck.json"}, timer.seconds());
  std::printf("volcheck: max deviation %.3f sigma over %lld bins (%s)\n",
              r.max_bin_deviation_sigma, static_cast<long long>(r.n_bins),
              r.max_bin_deviation_sigma <= 4.0 ? "pass" : "FAIL");
  return 0;
}

int run_check(const RunConfig& cfg) {
  Timer timer;
  const std::vector<InvariantResult> results = run_all_invariants(cfg);
  bool all = true;
  ordered_json items = ordered_json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    std::printf("[%s] %s (%s)\n", r.pass ? "ok" : "FAIL", r.name.c_str(), r.detail.c_str());
    items.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  ordered_json j;
  j["all_pass"] = all;
  j["results"] = items;
  write_file_atomic(fs::path(cfg.output) / "check.json", j.dump(2) + "\n");
  write_manifest(cfg, "check", {"check.json"}, timer.seconds());
  std::printf("check: %s\n", all ? "all invariants hold" : "FAILURES present");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slow volume-preserving diffeomorphisms: growth, volume and flux experiments"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand name

  GlobalOpts g;
  app.add_option("--config", g.config_path, "JSON config file");
  app.add_option("--seed", g.seed, "override the config seed");
  app.add_option("--out", g.out_dir, "output directory");
  app.add_option("--threads", g.threads, "worker thread cap (results are thread-count independent)");
  app.add_option("--kernel", g.kernel, "scan kernel: auto|scalar|avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  auto* weyl_cmd = app.add_subcommand("weyl", "extremal scan of W and W' at one N");
  std::int64_t weyl_n = 1000, weyl_grid = 0;
  weyl_cmd->add_option("--N", weyl_n, "iteration count")->required();
  weyl_cmd->add_option("--grid", weyl_grid, "scan grid (0 = auto rule)");

  auto* growth_cmd = app.add_subcommand("growth", "Gamma_n over a schedule with Psi ratios");
  std::string growth_schedule, growth_psi;
  growth_cmd->add_option("--schedule", growth_schedule, "dyadic:<max> or list:<n1,n2,...>");
  growth_cmd->add_option("--psi", growth_psi, "power:<beta>|log|loglog");

  auto* orbit_cmd = app.add_subcommand("orbit", "emit an orbit as CSV");
  std::string orbit_point = "0.1,0.2,0.0";
  std::int64_t orbit_steps = 100;
  orbit_cmd->add_option("--point", orbit_point, "start point: chart phi1,phi2,u / sphere lambda,theta,z (|z|>=1 = pole)");
  orbit_cmd->add_option("--steps", orbit_steps, "number of steps");

  auto* flux_cmd = app.add_subcommand("flux", "flux pairing for an example or the generator loop");
  std::string flux_variant = "example1";
  flux_cmd->add_option("--variant", flux_variant, "example1|example2|loop");

  auto* vol_cmd = app.add_subcommand("volcheck", "Monte-Carlo volume preservation test");
  std::int64_t vol_m = 100, vol_samples = 1000000;
  int vol_bins = 16;
  vol_cmd->add_option("--m", vol_m, "iterate to test");
  vol_cmd->add_option("--samples", vol_samples, "sample count");
  vol_cmd->add_option("--bins", vol_bins, "bins per axis");

  auto* check_cmd = app.add_subcommand("check", "run the full invariant suite");

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = load_effective_config(g);
    if (weyl_cmd->parsed()) return run_weyl(cfg, weyl_n, weyl_grid);
    if (growth_cmd->parsed()) return run_growth(cfg, growth_schedule, growth_psi);
    if (orbit_cmd->parsed()) return run_orbit(cfg, orbit_point, orbit_steps);
    if (flux_cmd->parsed()) return run_flux(cfg, flux_variant);
    if (vol_cmd->parsed()) return run_volcheck(cfg, vol_m, vol_samples, vol_bins);
    if (check_cmd->parsed()) return run_check(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
