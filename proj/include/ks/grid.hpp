#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ks {

// Cell-centered state on [0,1], uniform cells, homogeneous Neumann walls.
struct GridState {
  std::size_t n_cells = 0;
  double h = 0.0;  // 1 / n_cells
  std::vector<double> u;
  std::vector<double> v;
  double t = 0.0;

  static GridState uniform(std::size_t n_cells, double u0, double v0);
};

// Radially symmetric state on the unit ball, dimension n_dim >= 3. Cell i
// spans faces [i/N, (i+1)/N]; volume(i) = (r_{i+1}^n - r_i^n)/n, the exact
// integral of r^(n-1) over the cell, so cumulative sums are exact.
struct RadialGridState {
  int n_dim = 3;
  std::size_t n_cells = 0;
  double dr = 0.0;
  std::vector<double> u;
  std::vector<double> v;
  double t = 0.0;

  static RadialGridState uniform(int n_dim, std::size_t n_cells, double u0,
                                 double v0);

  double face_r(std::size_t j) const { return dr * static_cast<double>(j); }
  double cell_volume(std::size_t i) const;
};

struct TimeControls {
  double dt_init = 1e-6;
  double dt_min = 1e-12;
  double dt_max = 1e-3;
  double cfl_safety = 0.9;
  double u_blowup_threshold = 0.0;  // 0: filled as 1e6 * mean density
  double t_end = 1.0;

  void validate() const;
};

enum class StepFlag { OK, DtFloorHit, BlowupThresholdHit, NonFiniteDetected };

struct StepOutcome {
  StepFlag flag = StepFlag::OK;
  double dt_used = 0.0;
};

const char* to_string(StepFlag f);

}  // namespace ks
