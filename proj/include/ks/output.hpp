#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ks/run.hpp"

namespace ks {

// CSV header for emit_timeseries, byte for byte.
inline constexpr const char* kTimeseriesHeader =
    "t,u_max,u_mass,v_mass,L,diss_v,diss_flux,Mq_or_M2,rhs_identity,"
    "rhs_bound,vt_l2,v_linf";

// One row per diagnostic sample, 17 significant digits so values round-trip
// through decimal text exactly.
void emit_timeseries(const RunRecord& record, const std::string& path);

// JSON summary: outcome, final time, peak density, measured bounds, the
// per-sample identity residuals, m*(n) on the ball, and a config echo.
// theta is included when the caller computed one.
void emit_summary(const RunRecord& record, const std::string& path,
                  std::optional<double> theta = std::nullopt);

// timeseries.csv + summary.json under dir (created if needed).
void write_run_artifacts(const RunRecord& record, const std::string& dir,
                         std::optional<double> theta = std::nullopt);

// Executes every config into its own directory under out_dir and writes
// index.csv last. A failing run is recorded in the index and the sweep
// continues.
void sweep(const std::vector<RunConfig>& configs, const std::string& out_dir);

}  // namespace ks
