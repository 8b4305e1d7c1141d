// ks: simulate | sweep | theta | mstar
// Exit codes: 0 success, 2 configuration error, 3 run failure.
#include <fnmatch.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ks/output.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRun = 3;

std::vector<std::string> expand_glob(const std::string& pattern) {
  if (pattern.find_first_of("*?[") == std::string::npos) return {pattern};
  fs::path p(pattern);
  fs::path dir = p.parent_path().empty() ? fs::path(".") : p.parent_path();
  const std::string leaf = p.filename().string();
  std::vector<std::string> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string name = e.path().filename().string();
    if (fnmatch(leaf.c_str(), name.c_str(), 0) == 0)
      out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

ks::RunRecord run_any(const ks::RunConfig& cfg) {
  return cfg.geometry == ks::Geometry::Interval1D ? ks::run(cfg)
                                                  : ks::run_radial(cfg);
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
  ks::RunConfig cfg;
  try {
    cfg = ks::parse_config_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    ks::RunRecord rec = run_any(cfg);
    ks::write_run_artifacts(rec, out_dir);
    std::cout << "outcome=" << ks::to_string(rec.outcome) << '\n';
  } catch (const std::exception& e) {
    std::cerr << "run error: " << e.what() << '\n';
    return kExitRun;
  }
  return 0;
}

int cmd_sweep(const std::string& glob, const std::string& out_dir) {
  std::vector<ks::RunConfig> configs;
  try {
    for (const auto& path : expand_glob(glob))
      configs.push_back(ks::parse_config_file(path));
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    ks::sweep(configs, out_dir);
    std::cout << "runs=" << configs.size() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "run error: " << e.what() << '\n';
    return kExitRun;
  }
  return 0;
}

int cmd_theta(const std::string& config_path) {
  ks::RunConfig cfg;
  try {
    cfg = ks::parse_config_file(config_path);
    if (cfg.geometry != ks::Geometry::Interval1D ||
        !cfg.spec.has_integrable_tail())
      throw std::invalid_argument(
          "theta needs an interval run with integrable-tail diffusion");
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    ks::RunRecord pilot = run_any(cfg);
    const double m = pilot.rows.front().u_mass;
    double r_max = 100.0 * std::max(1.0, m);
    ks::MajorantB B = ks::build_majorant(cfg.spec, r_max, 2048);
    ks::MomentRateBound bound(m, cfg.q, cfg.tau, B, pilot.bounds.c1,
                              pilot.bounds.c2);
    while (bound.at_zero() >= 0 && r_max < 1e18) {
      r_max *= 4.0;
      B = ks::build_majorant(cfg.spec, r_max, 2048);
      bound = ks::MomentRateBound(m, cfg.q, cfg.tau, B, pilot.bounds.c1,
                                  pilot.bounds.c2);
    }
    if (bound.at_zero() >= 0)
      throw std::runtime_error("decay bound is nonnegative at the origin");
    const double r_hi = std::pow(m, cfg.q) / cfg.q;  // M_q <= m^q / q
    ks::ThetaResult res = ks::find_theta(bound, r_hi);
    if (res.status == ks::ThetaResult::Status::PreconditionFailed)
      throw std::runtime_error("theta scan precondition failed");
    std::printf("pilot_outcome=%s\n", ks::to_string(pilot.outcome));
    std::printf("m=%.17g\nc1=%.17g\nc2=%.17g\n", m, pilot.bounds.c1,
                pilot.bounds.c2);
    std::printf("lambda_at_zero=%.17g\n", bound.at_zero());
    if (res.status == ks::ThetaResult::Status::Found)
      std::printf("status=found\ntheta=%.17g\n", res.theta);
    else
      std::printf("status=all_negative\ntheta=%.17g\n", r_hi);
  } catch (const std::exception& e) {
    std::cerr << "run error: " << e.what() << '\n';
    return kExitRun;
  }
  return 0;
}

int cmd_mstar(int n) {
  if (n < 3) {
    std::cerr << "config error: mstar needs n >= 3\n";
    return kExitConfig;
  }
  std::printf("m_star=%.17g\n", ks::critical_mean_density(n));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keller-Segel finite-volume simulator and diagnostics"};
  app.require_subcommand(1);

  std::string config_path, glob, out_dir;
  int n_dim = 3;

  auto* sim = app.add_subcommand("simulate", "run one config");
  sim->add_option("config", config_path)->required();
  sim->add_option("--out", out_dir)->required();

  auto* sw = app.add_subcommand("sweep", "run every config matching a glob");
  sw->add_option("config-glob", glob)->required();
  sw->add_option("--out", out_dir)->required();

  auto* th = app.add_subcommand("theta", "decay-bound negativity radius");
  th->add_option("config", config_path)->required();

  auto* ms = app.add_subcommand("mstar", "critical mean density");
  ms->add_option("--n", n_dim)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (sim->parsed()) return cmd_simulate(config_path, out_dir);
  if (sw->parsed()) return cmd_sweep(glob, out_dir);
  if (th->parsed()) return cmd_theta(config_path);
  return cmd_mstar(n_dim);
}
