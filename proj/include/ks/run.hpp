#pragma once

#include <string>
#include <vector>

#include "ks/config.hpp"
#include "ks/diagnostics.hpp"
#include "ks/grid.hpp"

namespace ks {

enum class Outcome { CompletedBounded, UnboundedSuspected, Inconclusive };
const char* to_string(Outcome o);

// One diagnostic sample; maps 1:1 onto a CSV row.
struct DiagRow {
  double t = 0;
  double u_max = 0;
  double u_mass = 0;
  double v_mass = 0;
  double L = 0;
  double diss_v = 0;
  double diss_flux = 0;
  double moment = 0;        // M_q (interval) or M_2 (ball)
  double rhs_identity = 0;  // moment-rate identity (interval) /
                            // transport term (ball)
  double rhs_bound = 0;     // decay-bound value at the current moment
  double vt_l2 = 0;         // ball geometry reports the ball-normalized norm
  double v_linf = 0;
};

struct RunRecord {
  RunConfig config;
  std::vector<DiagRow> rows;
  MeasuredBounds bounds;
  StepFlag final_flag = StepFlag::OK;
  Outcome outcome = Outcome::Inconclusive;
  double t_final = 0;
  double u_max_peak = 0;
  double wall_time_s = 0;
  long steps = 0;
};

// Time loop with diagnostics every diag_cadence accepted steps (plus the
// initial and final states). Terminates on t_end, DtFloorHit,
// BlowupThresholdHit or NonFiniteDetected; the flag lands in final_flag and
// the outcome comes from detect_blowup.
RunRecord run(const RunConfig& config);
RunRecord run_radial(const RunConfig& config);

// Classify a finished trajectory from its max-density series:
// UnboundedSuspected on a threshold hit, or a dt-floor hit with u_max rising
// over the final decade of samples; CompletedBounded when t_end was reached
// with u_max within 10x its running median; otherwise Inconclusive.
Outcome detect_blowup(const RunRecord& record);

// Initial states assembled from the config recipes.
GridState initial_state_1d(const RunConfig& config);
RadialGridState initial_state_radial(const RunConfig& config);

}  // namespace ks
