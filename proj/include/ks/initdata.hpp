#pragma once

#include <vector>

#include "ks/grid.hpp"

namespace ks {

// Concentrated initial-density recipes. Plateau profiles are cellwise
// constant with exact discrete mass; the smooth variant is a mollified
// cos^2 bump rescaled to the same exact discrete mass.
struct BumpRecipe {
  enum class Placement { LeftEnd, RightEnd, Centered };
  enum class Profile { Plateau, Smooth };

  double mass = 1.0;      // int u0 (1D) -- or mean density M (radial)
  double width = 1.0;     // support width eps in (0, 1]
  Placement placement = Placement::RightEnd;
  Profile profile = Profile::Plateau;
};

// Nonnegative u0 supported on a width-eps window; discrete mass is exactly
// recipe.mass. The moment functional is anchored at x = 0 through the
// cumulative, so small-moment data must concentrate at the right end.
// Throws if width < 2h.
std::vector<double> bump_1d(const BumpRecipe& recipe, std::size_t n_cells);

// Constant v0 = m + lambda * m / (2(q+1)): the excess over m sits strictly
// inside the admissible window (0, m/(2(q+1))). lambda in (0,1) exclusive.
std::vector<double> v0_admissible(double m, double q, double lambda,
                                  std::size_t n_cells);

struct RadialBumpResult {
  std::vector<double> u0;
  double eps = 0.0;  // plateau radius actually used
  double m2 = 0.0;   // second moment achieved
};

// Bump supported on the ball r <= eps, with eps chosen as the largest
// whole-cell radius whose second moment does not exceed target_m2. Plateau by
// default; Smooth gives a mollified cos^2-in-r bump (bounded gradients, for
// regularity-sensitive runs). Weighted discrete mass is exactly M/n. Throws a
// resolution error naming the achievable floor when even the two-cell support
// overshoots the target.
RadialBumpResult radial_concentrated(
    double M, int n_dim, double target_m2, std::size_t n_cells,
    BumpRecipe::Profile profile = BumpRecipe::Profile::Plateau);

}  // namespace ks
