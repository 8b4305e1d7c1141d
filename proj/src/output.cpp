#include "ks/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace ks {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

nlohmann::json spec_json(const DiffusionSpec& spec) {
  nlohmann::json j;
  switch (spec.family) {
    case DiffusionFamily::Constant:
      j["family"] = "constant";
      j["c"] = spec.constant;
      break;
    case DiffusionFamily::IntegrablePower:
      j["family"] = "integrable_power";
      j["p"] = spec.power;
      break;
    case DiffusionFamily::CriticalPower:
      j["family"] = "critical_power";
      j["n"] = spec.dim;
      break;
  }
  return j;
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["name"] = cfg.name;
  j["geometry"] = to_string(cfg.geometry);
  if (cfg.geometry == Geometry::RadialBall) j["n"] = cfg.n_dim;
  j["tau"] = cfg.tau;
  j["diffusion"] = spec_json(cfg.spec);
  j["n_cells"] = cfg.n_cells;
  j["q"] = cfg.q;
  j["diag_cadence"] = cfg.diag_cadence;
  j["t_end"] = cfg.time.t_end;
  j["dt_init"] = cfg.time.dt_init;
  j["dt_min"] = cfg.time.dt_min;
  j["dt_max"] = cfg.time.dt_max;
  j["cfl_safety"] = cfg.time.cfl_safety;
  j["u_blowup_threshold"] = cfg.time.u_blowup_threshold;
  j["u0"] = cfg.u0_profile;
  j["mass"] = cfg.mass;
  j["width"] = cfg.width;
  j["placement"] = cfg.placement;
  j["target_m2"] = cfg.target_m2;
  j["v0"] = cfg.v0_profile;
  j["v0_value"] = cfg.v0_value;
  j["v0_lambda"] = cfg.v0_lambda;
  j["vt_power_half"] = cfg.vt_power_half;
  return j;
}

// Residual of the recorded moment-rate identity against a centered finite
// difference of the moment series. The ball record stores only the transport
// term in rhs_identity, so the table is limited to the interval identity.
nlohmann::json residual_table(const RunRecord& rec) {
  nlohmann::json rows = nlohmann::json::array();
  if (rec.config.geometry != Geometry::Interval1D ||
      !rec.config.spec.has_integrable_tail())
    return rows;
  for (std::size_t k = 0; k + 1 < rec.rows.size(); ++k) {
    const auto& a = rec.rows[k];
    const auto& b = rec.rows[k + 1];
    const double dt = b.t - a.t;
    if (!(dt > 0)) continue;
    const double fd = (b.moment - a.moment) / dt;
    const double rhs = 0.5 * (a.rhs_identity + b.rhs_identity);
    rows.push_back({{"t", 0.5 * (a.t + b.t)}, {"residual", std::abs(fd - rhs)}});
  }
  return rows;
}

}  // namespace

void emit_timeseries(const RunRecord& record, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_timeseries: cannot open " + path);
  out << kTimeseriesHeader << '\n';
  for (const auto& r : record.rows) {
    out << fmt17(r.t) << ',' << fmt17(r.u_max) << ',' << fmt17(r.u_mass)
        << ',' << fmt17(r.v_mass) << ',' << fmt17(r.L) << ','
        << fmt17(r.diss_v) << ',' << fmt17(r.diss_flux) << ','
        << fmt17(r.moment) << ',' << fmt17(r.rhs_identity) << ','
        << fmt17(r.rhs_bound) << ',' << fmt17(r.vt_l2) << ','
        << fmt17(r.v_linf) << '\n';
  }
  if (!out) throw std::runtime_error("emit_timeseries: write failed: " + path);
}

void emit_summary(const RunRecord& record, const std::string& path,
                  std::optional<double> theta) {
  nlohmann::json j;
  j["outcome"] = to_string(record.outcome);
  j["final_flag"] = to_string(record.final_flag);
  j["t_final"] = record.t_final;
  j["u_max_peak"] = record.u_max_peak;
  j["steps"] = record.steps;
  j["samples"] = record.rows.size();
  j["wall_time_s"] = record.wall_time_s;
  j["c1_sup_v_linf"] = record.bounds.c1;
  j["c2_sup_vt_l2"] = record.bounds.c2;
  j["L_lower"] = record.bounds.L_lower;
  if (theta) j["theta"] = *theta;
  if (record.config.geometry == Geometry::RadialBall)
    j["m_star"] = critical_mean_density(record.config.n_dim);
  j["identity_residuals"] = residual_table(record);
  j["config"] = config_json(record.config);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_summary: cannot open " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("emit_summary: write failed: " + path);
}

void write_run_artifacts(const RunRecord& record, const std::string& dir,
                         std::optional<double> theta) {
  std::filesystem::create_directories(dir);
  emit_timeseries(record, dir + "/timeseries.csv");
  emit_summary(record, dir + "/summary.json", theta);
}

void sweep(const std::vector<RunConfig>& configs, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);

  struct IndexRow {
    std::string run_id, geometry, outcome;
    double tau, mass, q;
    int n;
    double u_max, t_final;
  };
  std::vector<IndexRow> index;
  std::map<std::string, int> seen;

  for (const auto& cfg : configs) {
    std::string run_id = cfg.name;
    if (int k = seen[cfg.name]++; k > 0) run_id += "_" + std::to_string(k + 1);

    IndexRow row{run_id,
                 to_string(cfg.geometry),
                 "Failed",
                 cfg.tau,
                 cfg.mass,
                 cfg.q,
                 cfg.geometry == Geometry::RadialBall ? cfg.n_dim : 1,
                 std::nan(""),
                 std::nan("")};
    try {
      RunRecord rec = cfg.geometry == Geometry::Interval1D ? run(cfg)
                                                           : run_radial(cfg);
      write_run_artifacts(rec, out_dir + "/" + run_id);
      row.outcome = to_string(rec.outcome);
      row.u_max = rec.u_max_peak;
      row.t_final = rec.t_final;
    } catch (const std::exception& e) {
      std::ofstream err(out_dir + "/" + run_id + ".error.txt");
      err << e.what() << '\n';
    }
    index.push_back(std::move(row));
  }

  std::ofstream out(out_dir + "/index.csv", std::ios::binary);
  if (!out)
    throw std::runtime_error("sweep: cannot open " + out_dir + "/index.csv");
  out << "run_id,geometry,tau,m_or_M,q,n,outcome,u_max,t_final\n";
  for (const auto& r : index) {
    out << r.run_id << ',' << r.geometry << ',' << fmt17(r.tau) << ','
        << fmt17(r.mass) << ',' << fmt17(r.q) << ',' << r.n << ',' << r.outcome
        << ',' << fmt17(r.u_max) << ',' << fmt17(r.t_final) << '\n';
  }
}

}  // namespace ks
