#include "ks/solver_radial.hpp"

#include "fv_core.hpp"

namespace ks {

StepOutcome step_radial(RadialGridState& state, const DiffusionSpec& spec,
                        const TimeControls& controls) {
  if (spec.family == DiffusionFamily::CriticalPower &&
      spec.dim != state.n_dim)
    throw std::invalid_argument(
        "step_radial: CriticalPower dimension differs from grid dimension");
  if (spec.family == DiffusionFamily::IntegrablePower)
    throw std::invalid_argument(
        "step_radial: IntegrablePower belongs to the interval problem");
  controls.validate();
  const auto metric = detail::radial_metric(state.n_dim, state.n_cells);
  double mass = 0.0, volume = 0.0;
  for (std::size_t i = 0; i < state.n_cells; ++i) {
    mass += state.u[i] * metric.vol[i];
    volume += metric.vol[i];
  }
  const double mean = mass / volume;
  const double threshold = controls.u_blowup_threshold > 0
                               ? controls.u_blowup_threshold
                               : 1e6 * mean;
  return detail::fv_step(state.u, state.v, state.t, /*tau=*/1.0, spec,
                         controls, metric, threshold);
}

std::vector<double> chemo_rate_radial(const RadialGridState& state) {
  const auto metric = detail::radial_metric(state.n_dim, state.n_cells);
  return detail::v_rhs(state.u, state.v, /*tau=*/1.0, metric);
}

std::vector<double> equilibrium_v(const RadialGridState& state) {
  const auto metric = detail::radial_metric(state.n_dim, state.n_cells);
  return detail::steady_v(state.u, metric);
}

}  // namespace ks
