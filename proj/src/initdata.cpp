#include "ks/initdata.hpp"

#include <cmath>
#include <sstream>

#include "ks/diagnostics.hpp"

namespace ks {

std::vector<double> bump_1d(const BumpRecipe& recipe, std::size_t n_cells) {
  if (!(recipe.mass > 0)) throw std::invalid_argument("bump_1d: mass <= 0");
  if (!(recipe.width > 0 && recipe.width <= 1.0))
    throw std::invalid_argument("bump_1d: width outside (0,1]");
  const double h = 1.0 / static_cast<double>(n_cells);
  const auto k = static_cast<std::size_t>(std::lround(recipe.width / h));
  if (k < 2)
    throw std::invalid_argument("bump_1d: width unresolved, need >= 2 cells");

  std::size_t first = 0;
  switch (recipe.placement) {
    case BumpRecipe::Placement::LeftEnd: first = 0; break;
    case BumpRecipe::Placement::RightEnd: first = n_cells - k; break;
    case BumpRecipe::Placement::Centered: first = (n_cells - k) / 2; break;
  }

  std::vector<double> u(n_cells, 0.0);
  if (recipe.profile == BumpRecipe::Profile::Plateau) {
    const double value = recipe.mass / (static_cast<double>(k) * h);
    for (std::size_t i = 0; i < k; ++i) u[first + i] = value;
    return u;
  }
  // cos^2 bump over the support, rescaled so the discrete sum is exact.
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double s = (static_cast<double>(i) + 0.5) / static_cast<double>(k);
    const double c = std::cos(M_PI * (s - 0.5));
    u[first + i] = c * c;
    sum += u[first + i] * h;
  }
  for (std::size_t i = 0; i < k; ++i) u[first + i] *= recipe.mass / sum;
  return u;
}

std::vector<double> v0_admissible(double m, double q, double lambda,
                                  std::size_t n_cells) {
  if (!(m > 0)) throw std::invalid_argument("v0_admissible: m <= 0");
  if (!(q > 2)) throw std::domain_error("v0_admissible: q <= 2");
  if (!(lambda > 0 && lambda < 1))
    throw std::domain_error("v0_admissible: lambda outside (0,1)");
  const double window = m / (2.0 * (q + 1.0));
  const double excess = lambda * window;
  if (!(excess > 0 && excess < window))
    throw std::domain_error("v0_admissible: excess hits the window endpoint");
  return std::vector<double>(n_cells, m + excess);
}

RadialBumpResult radial_concentrated(double M, int n_dim, double target_m2,
                                     std::size_t n_cells,
                                     BumpRecipe::Profile profile) {
  if (!(M > 0)) throw std::invalid_argument("radial_concentrated: M <= 0");
  if (!(target_m2 > 0))
    throw std::invalid_argument("radial_concentrated: target_m2 <= 0");
  const double dr = 1.0 / static_cast<double>(n_cells);
  const double Mn = M / n_dim;

  // Cells on the support r < r_k, normalized so the weighted mass is exactly
  // Mn. Smooth uses a cos^2 taper in r (bounded gradients); plateau is flat.
  auto cells_of = [&](std::size_t k) {
    const double rk = dr * static_cast<double>(k);
    std::vector<double> u(n_cells, 0.0);
    double wmass = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double rl = dr * static_cast<double>(i);
      const double rc = rl + 0.5 * dr;
      const double vol =
          (std::pow(rl + dr, n_dim) - std::pow(rl, n_dim)) / n_dim;
      if (profile == BumpRecipe::Profile::Smooth) {
        const double c = std::cos(0.5 * M_PI * rc / rk);
        u[i] = c * c;
      } else {
        u[i] = 1.0;
      }
      wmass += u[i] * vol;
    }
    for (std::size_t i = 0; i < k; ++i) u[i] *= Mn / wmass;
    return u;
  };

  auto m2_of = [&](std::size_t k) {
    const std::vector<double> u = cells_of(k);
    std::vector<double> U(n_cells + 1, 0.0);
    for (std::size_t i = 0; i < n_cells; ++i) {
      const double rl = dr * static_cast<double>(i);
      const double vol =
          (std::pow(rl + dr, n_dim) - std::pow(rl, n_dim)) / n_dim;
      U[i + 1] = U[i] + u[i] * vol;
    }
    return radial_second_moment(U, M, n_dim, dr);
  };

  // m2_of is nondecreasing in k; take the widest support under the target.
  if (m2_of(2) > target_m2) {
    std::ostringstream msg;
    msg << "radial_concentrated: target_m2 " << target_m2
        << " unreachable at this resolution; achievable floor " << m2_of(2);
    throw std::runtime_error(msg.str());
  }
  std::size_t lo = 2, hi = n_cells;
  while (lo < hi) {  // largest k with m2_of(k) <= target
    const std::size_t mid = (lo + hi + 1) / 2;
    if (m2_of(mid) <= target_m2)
      lo = mid;
    else
      hi = mid - 1;
  }

  RadialBumpResult res;
  res.eps = dr * static_cast<double>(lo);
  res.m2 = m2_of(lo);
  res.u0 = cells_of(lo);
  return res;
}

}  // namespace ks
