#pragma once

#include "ks/grid.hpp"
#include "ks/kinetics.hpp"

namespace ks {

// One adaptive IMEX step of the interval system
//   u_t = (a(u) u_x)_x - (u v_x)_x,   tau v_t = v_xx - v + u
// with zero-flux walls. Advances state in place; on a non-OK flag the state
// is left untouched. Discrete u-mass is conserved exactly and u, v stay
// nonnegative on every accepted step.
StepOutcome step(GridState& state, double tau, const DiffusionSpec& spec,
                 const TimeControls& controls);

// ||v_t||-style right-hand side (v_xx - v + u)/tau per cell, evaluated from
// the current state (not by time differencing).
std::vector<double> chemo_rate(const GridState& state, double tau);

// Steady chemoattractant response to the state's density: v - v_xx = u with
// zero-flux walls (v_t = 0 exactly).
std::vector<double> equilibrium_v(const GridState& state);

}  // namespace ks
