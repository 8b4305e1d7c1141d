#pragma once

// Shared finite-volume / IMEX kernel for the interval and radial solvers.
// Geometry enters only through face weights W_j and cell volumes vol_i:
// interval: W = 1, vol = h; ball: W_j = r_j^(n-1), vol_i = (r_{i+1}^n-r_i^n)/n.
// The u update telescopes weighted face fluxes (exact mass conservation);
// v is advanced by one implicit Euler solve of tau v_t = div(W grad v) - v + u.

#include <cmath>
#include <cstddef>
#include <vector>

#include "ks/grid.hpp"
#include "ks/kinetics.hpp"

namespace ks::detail {

struct Metric {
  std::vector<double> face_w;  // n_cells + 1
  std::vector<double> vol;     // n_cells
  double dx = 0.0;
};

Metric interval_metric(std::size_t n_cells);
Metric radial_metric(int n_dim, std::size_t n_cells);

// One adaptive step on (u, v, t). Positivity-limited explicit u update with
// upwinded chemotactic advection; dt is halved and the step redone if the
// updated drift field still produces a negative cell.
StepOutcome fv_step(std::vector<double>& u, std::vector<double>& v, double& t,
                    double tau, const DiffusionSpec& spec,
                    const TimeControls& controls, const Metric& metric,
                    double u_blowup_threshold);

// (v_xx-type operator applied to v - v + u) / tau per cell; the PDE right-hand
// side of the chemoattractant equation, used for ||v_t||_2 diagnostics.
std::vector<double> v_rhs(const std::vector<double>& u,
                          const std::vector<double>& v, double tau,
                          const Metric& metric);

void solve_tridiagonal(std::vector<double>& sub, std::vector<double>& diag,
                       std::vector<double>& super, std::vector<double>& rhs);

// Steady chemoattractant response: v - div(W grad v)/vol = u with zero-flux
// walls; the v_t = 0 state matched to a density profile.
std::vector<double> steady_v(const std::vector<double>& u, const Metric& metric);

}  // namespace ks::detail
