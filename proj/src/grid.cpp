#include "ks/grid.hpp"

#include <cmath>

namespace ks {

GridState GridState::uniform(std::size_t n_cells, double u0, double v0) {
  if (n_cells == 0) throw std::invalid_argument("GridState: n_cells == 0");
  GridState s;
  s.n_cells = n_cells;
  s.h = 1.0 / static_cast<double>(n_cells);
  s.u.assign(n_cells, u0);
  s.v.assign(n_cells, v0);
  return s;
}

RadialGridState RadialGridState::uniform(int n_dim, std::size_t n_cells,
                                         double u0, double v0) {
  if (n_dim < 3) throw std::invalid_argument("RadialGridState: n_dim < 3");
  if (n_cells == 0) throw std::invalid_argument("RadialGridState: n_cells == 0");
  RadialGridState s;
  s.n_dim = n_dim;
  s.n_cells = n_cells;
  s.dr = 1.0 / static_cast<double>(n_cells);
  s.u.assign(n_cells, u0);
  s.v.assign(n_cells, v0);
  return s;
}

double RadialGridState::cell_volume(std::size_t i) const {
  const double a = face_r(i);
  const double b = face_r(i + 1);
  return (std::pow(b, n_dim) - std::pow(a, n_dim)) / n_dim;
}

void TimeControls::validate() const {
  if (!(dt_min > 0 && dt_min <= dt_init && dt_init <= dt_max))
    throw std::invalid_argument(
        "TimeControls: need 0 < dt_min <= dt_init <= dt_max");
  if (!(cfl_safety > 0 && cfl_safety < 1))
    throw std::invalid_argument("TimeControls: cfl_safety outside (0,1)");
  if (!(t_end > 0)) throw std::invalid_argument("TimeControls: t_end <= 0");
}

const char* to_string(StepFlag f) {
  switch (f) {
    case StepFlag::OK: return "OK";
    case StepFlag::DtFloorHit: return "DtFloorHit";
    case StepFlag::BlowupThresholdHit: return "BlowupThresholdHit";
    case StepFlag::NonFiniteDetected: return "NonFiniteDetected";
  }
  return "?";
}

}  // namespace ks
