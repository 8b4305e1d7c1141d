#include "ks/solver1d.hpp"

#include "fv_core.hpp"

namespace ks {

StepOutcome step(GridState& state, double tau, const DiffusionSpec& spec,
                 const TimeControls& controls) {
  if (!(tau > 0)) throw std::invalid_argument("step: tau <= 0");
  controls.validate();
  const auto metric = detail::interval_metric(state.n_cells);
  const double mean =
      [&] {
        double s = 0;
        for (double ui : state.u) s += ui;
        return s / state.n_cells;
      }();
  const double threshold = controls.u_blowup_threshold > 0
                               ? controls.u_blowup_threshold
                               : 1e6 * mean;
  return detail::fv_step(state.u, state.v, state.t, tau, spec, controls,
                         metric, threshold);
}

std::vector<double> chemo_rate(const GridState& state, double tau) {
  const auto metric = detail::interval_metric(state.n_cells);
  return detail::v_rhs(state.u, state.v, tau, metric);
}

std::vector<double> equilibrium_v(const GridState& state) {
  const auto metric = detail::interval_metric(state.n_cells);
  return detail::steady_v(state.u, metric);
}

}  // namespace ks
