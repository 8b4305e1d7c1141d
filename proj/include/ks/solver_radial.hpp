#pragma once

#include "ks/grid.hpp"
#include "ks/kinetics.hpp"

namespace ks {

// One adaptive IMEX step of the radial ball system (tau = 1)
//   u_t = r^(1-n) (r^(n-1) a(u) u_r)_r - r^(1-n) (r^(n-1) u v_r)_r
//   v_t = r^(1-n) (r^(n-1) v_r)_r + u - v
// with zero-flux faces at r = 0 and r = 1. The r = 0 face carries weight
// r^(n-1) = 0, which removes the coordinate singularity; weighted u-mass
// sum(u_i vol_i) is conserved exactly.
StepOutcome step_radial(RadialGridState& state, const DiffusionSpec& spec,
                        const TimeControls& controls);

std::vector<double> chemo_rate_radial(const RadialGridState& state);

// Steady chemoattractant response to the state's density: v - Delta v = u
// with zero-flux walls (v_t = 0 exactly).
std::vector<double> equilibrium_v(const RadialGridState& state);

}  // namespace ks
