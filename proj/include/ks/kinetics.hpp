#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ks {

// Nonlinear cell diffusivity a(u). Three closed-form families:
//   Constant(c):        a(u) = c,             c > 0
//   IntegrablePower(p): a(u) = (1+u)^(-p),    p > 1  (integrable tail)
//   CriticalPower(n):   a(u) = (1+u)^(1-2/n), n >= 3
enum class DiffusionFamily { Constant, IntegrablePower, CriticalPower };

struct DiffusionSpec {
  DiffusionFamily family = DiffusionFamily::Constant;
  double constant = 1.0;  // c (Constant)
  double power = 2.0;     // p (IntegrablePower)
  int dim = 3;            // n (CriticalPower)

  static DiffusionSpec Constant(double c);
  static DiffusionSpec IntegrablePower(double p);
  static DiffusionSpec CriticalPower(int n);

  bool has_integrable_tail() const {
    return family == DiffusionFamily::IntegrablePower;
  }
};

// a(u); u >= 0 required.
double diffusivity(const DiffusionSpec& spec, double u);

// Tail primitive A(u) = -int_u^inf a(s) ds  (<= 0, requires integrable tail).
double tail_primitive(const DiffusionSpec& spec, double u);

// Zero-anchored primitive A(u) = int_0^u a(s) ds  (>= 0, A(0) = 0).
double primitive_from_zero(const DiffusionSpec& spec, double u);

// Entropy density Phi(u): Phi(1) = Phi'(1) = 0, Phi''(r) = a(r)/r.
// Requires u > 0; the Lyapunov integrand clamps u to kPhiFloor first.
inline constexpr double kPhiFloor = 1e-12;
double entropy_phi(const DiffusionSpec& spec, double u);

// Piecewise-linear concave majorant B of r -> -r*A_tail(r) on [0, r_max],
// extended beyond r_max with a fixed nonnegative slope. Immutable once built.
class MajorantB {
 public:
  MajorantB(std::vector<double> r, std::vector<double> b,
            double asymptotic_slope, double r_max);

  double operator()(double r) const;     // B(r), r >= 0
  double beta(double r) const;           // B(r)/r, r > 0
  double beta_limit() const { return asymptotic_slope_; }  // lim B(r)/r
  double r_max() const { return r_max_; }
  const std::vector<double>& breakpoints_r() const { return r_; }
  const std::vector<double>& breakpoints_b() const { return b_; }

 private:
  std::vector<double> r_, b_;
  double asymptotic_slope_;
  double r_max_;
};

// Least piecewise-linear concave majorant of r -> -r*A_tail(r) supported on
// tangent lines at `samples` nodes; exact majorant on all of [0, inf), equal
// to -rA at every node. Requires an integrable-tail spec, r_max > 0,
// samples >= 3. The asymptotic slope tends to 0 as r_max grows.
MajorantB build_majorant(const DiffusionSpec& spec, double r_max,
                         std::size_t samples);

}  // namespace ks
