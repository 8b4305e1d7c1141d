#pragma once

#include <string>

#include "ks/grid.hpp"
#include "ks/kinetics.hpp"

namespace ks {

enum class Geometry { Interval1D, RadialBall };

// Fully deterministic run description. Defaults are filled by parse_config
// and echoed into summaries.
struct RunConfig {
  Geometry geometry = Geometry::Interval1D;
  int n_dim = 3;      // ball dimension (radial only)
  double tau = 1.0;   // interval only; the ball system has unit relaxation
  DiffusionSpec spec = DiffusionSpec::Constant(1.0);
  std::size_t n_cells = 256;
  TimeControls time;
  double q = 3.0;                 // interval moment exponent
  std::size_t diag_cadence = 10;  // steps between diagnostic samples

  std::string u0_profile = "constant";  // constant | plateau | smooth
  double mass = 1.0;                    // m (interval) or mean density M (ball)
  double width = 1.0;                   // bump support
  std::string placement = "right";      // left | right | center
  double target_m2 = 0.0;  // > 0: radial plateau width chosen to meet it

  std::string v0_profile = "constant";  // constant | admissible | equilibrium
  double v0_value = -1.0;               // constant level; < 0 means mass
  double v0_lambda = 0.5;               // admissible-window fraction

  bool vt_power_half = true;  // exponent on ||v_t|| in the M_2 rate bound

  std::string name = "run";

  void validate() const;
};

// Flat key = value text with optional [section] headers (organizational
// only; keys are global and must be unique). '#' starts a comment. Unknown
// or duplicate keys are errors naming the offending keys.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

const char* to_string(Geometry g);

}  // namespace ks
