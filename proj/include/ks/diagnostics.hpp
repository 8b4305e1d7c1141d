#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ks/grid.hpp"
#include "ks/kinetics.hpp"

namespace ks {

struct LyapunovSample {
  double t = 0.0;
  double L = 0.0;
  double dissipation_v = 0.0;     // ||v_t||_2^2
  double dissipation_flux = 0.0;  // int (a(u)u_x - u v_x)^2 / u
};

struct MomentSample {
  double t = 0.0;
  double moment = 0.0;  // M_q (interval) or M_2 (radial)
  double q = 0.0;       // 0 for radial samples
  double rhs_identity = 0.0;
  double rhs_bound = 0.0;
};

// Running suprema / infima over a trajectory. c1 tracks ||v||_inf, c2 tracks
// ||v_t||_2 (ball-normalized in the radial geometry), L_lower the Lyapunov
// floor.
struct MeasuredBounds {
  double c1 = 0.0;
  double c2 = 0.0;
  double L_lower = 0.0;
  bool seen = false;

  void observe(double v_linf, double vt_l2, double L);
};

// ---- masses and cumulatives -------------------------------------------------

// Discrete integrals (sum u_i h, sum v_i h).
std::pair<double, double> masses(const GridState& s);
// Weighted integrals against r^(n-1) dr: (sum u_i vol_i, sum v_i vol_i).
// For mean density M this is M/n; the physical ball mass is n|B(0,1)| times
// the reported value.
std::pair<double, double> masses(const RadialGridState& s);

// Face-sampled running sums of u; size n_cells + 1, first entry 0. Radial
// cumulatives use exact shell volumes, so the last entry is exactly the
// weighted mass.
std::vector<double> cumulative(const GridState& s);
std::vector<double> cumulative(const RadialGridState& s);

// ---- interval functionals ---------------------------------------------------

// M_q = (1/q) int_0^1 U^q dx by composite trapezoid over faces; q > 2.
double generalized_moment(const std::vector<double>& U_faces, double h,
                          double q);

LyapunovSample lyapunov(const GridState& s, const DiffusionSpec& spec,
                        double tau);
LyapunovSample lyapunov(const RadialGridState& s, const DiffusionSpec& spec);

// | L(t) + tau int ||v_t||^2 + int flux - L(0) | with trapezoid time
// quadrature over the recorded samples.
double dissipation_residual(const std::vector<LyapunovSample>& traj,
                            double tau);

// L2 norm of (v_xx - v + u)/tau computed from the PDE right-hand side.
double chemo_rate_norm(const GridState& s, double tau);
// Radial: norm against r^(n-1) dr (multiply by sqrt(n |B|) for the ball norm).
double chemo_rate_norm(const RadialGridState& s);

double sup_norm(const std::vector<double>& x);

// Exact time derivative of M_q written through the cumulative variables:
//   -(q-1) int U^(q-2) u A(u) + (U^(q-1) A(u))|_0^1 + int U^(q-1) u (U-V-tau V_t)
// with A the tail primitive and V_t cumulated from the PDE right-hand side.
double moment_rate_identity(const GridState& s, const DiffusionSpec& spec,
                            double tau, double q);

// ---- decay bound Lambda and its negativity radius ---------------------------

// Scalar majorant of d/dt M_q as a function of r = M_q:
//   c1 r + (q-1) B(m)^(2/q) (m^(q+1)/(q+1))^((q-2)/2)
//         * beta(m^(q+1)/(q(q+1)r))^((q-2)/2)
//   + c2 tau m^(q/2) q^(-1/2) sqrt(r) - m^(q+1)/(2q(q+1)).
class MomentRateBound {
 public:
  MomentRateBound(double m, double q, double tau, const MajorantB& B,
                  double c1, double c2);

  double operator()(double r) const;  // r > 0
  double at_zero() const;             // r -> 0+ limit (beta -> beta_limit)

 private:
  double m_, q_, tau_, c1_, c2_;
  const MajorantB* B_;
  double mid_coeff_;   // (q-1) B(m)^(2/q) (m^(q+1)/(q+1))^((q-2)/2)
  double sink_;        // m^(q+1) / (2q(q+1))
};

struct ThetaResult {
  enum class Status { Found, AllNegative, PreconditionFailed } status;
  double theta = 0.0;  // first sign change when Found
};

// First sign change of the bound on (0, r_hi], located by scan + bisection.
ThetaResult find_theta(const MomentRateBound& bound, double r_hi,
                       std::size_t scan_points = 4096);

// ---- Jensen chain -----------------------------------------------------------

struct JensenSlacks {
  bool vacuous = false;  // int B(u) == 0
  double power_step = 0.0;      // concavity of x -> x^((q-2)/q), measure B(u)dx
  double mass_step = 0.0;       // B(int u) - int B(u), Lebesgue measure
  double weighted_step = 0.0;   // B-Jensen against the U^q dx / (q M_q) measure
};

JensenSlacks jensen_slacks(const GridState& s, const MajorantB& B, double q);

// ---- radial functionals -----------------------------------------------------

// M_2 = (1/2) int_0^1 (M/n - U)^2 r^(n-1) dr, trapezoid over faces.
double radial_second_moment(const std::vector<double>& U_faces, double M,
                            int n_dim, double dr);

// Volume of the unit ball in n dimensions.
double unit_ball_volume(int n_dim);

// Mean density above which the leading terms of the second-moment decay
// inequality turn negative: n [6 (2(n-1))^(2-2/n) / ((2-2/n)(3-2/n))]^(n/2).
double critical_mean_density(int n_dim);
// The leading-term expression itself; negative for M beyond the critical
// density.
double critical_condition(double M, int n_dim);

// Majorant of d/dt M_2 from the measured ||v||_inf and the ball L2 norm of
// v_t. `half_power_vt` selects the printed 1/2 exponent on ||v_t||; false
// gives the power-1 variant the Cauchy-Schwarz step suggests.
double second_moment_rate_bound(double M2, double M, int n_dim, double v_linf,
                                double vt_ball_l2, bool half_power_vt = true);

// Two sides of the radial transport estimate
//   2(n-1) int r^(n-2) (M/n - U) U_r dr
//     <= (n-1)(2n)^(1-2/n) (M/n)^(4/n) M_2^(1-2/n),
// both evaluated with per-cell Gauss-Kronrod quadrature on the exact
// cumulative of the cellwise-constant density, so the Jensen chain applies to
// the integrand verbatim. M is derived from the state's weighted mass.
std::pair<double, double> radial_transport_bound_pair(const RadialGridState& s);

}  // namespace ks
