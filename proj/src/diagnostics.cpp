#include "ks/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "fv_core.hpp"
#include "ks/quadrature.hpp"
#include "ks/solver1d.hpp"
#include "ks/solver_radial.hpp"

namespace ks {

void MeasuredBounds::observe(double v_linf, double vt_l2, double L) {
  if (!seen) {
    c1 = v_linf;
    c2 = vt_l2;
    L_lower = L;
    seen = true;
    return;
  }
  c1 = std::max(c1, v_linf);
  c2 = std::max(c2, vt_l2);
  L_lower = std::min(L_lower, L);
}

std::pair<double, double> masses(const GridState& s) {
  double mu = 0, mv = 0;
  for (std::size_t i = 0; i < s.n_cells; ++i) {
    mu += s.u[i] * s.h;
    mv += s.v[i] * s.h;
  }
  return {mu, mv};
}

std::pair<double, double> masses(const RadialGridState& s) {
  double mu = 0, mv = 0;
  for (std::size_t i = 0; i < s.n_cells; ++i) {
    const double w = s.cell_volume(i);
    mu += s.u[i] * w;
    mv += s.v[i] * w;
  }
  return {mu, mv};
}

std::vector<double> cumulative(const GridState& s) {
  std::vector<double> U(s.n_cells + 1, 0.0);
  for (std::size_t i = 0; i < s.n_cells; ++i) U[i + 1] = U[i] + s.u[i] * s.h;
  return U;
}

std::vector<double> cumulative(const RadialGridState& s) {
  std::vector<double> U(s.n_cells + 1, 0.0);
  for (std::size_t i = 0; i < s.n_cells; ++i)
    U[i + 1] = U[i] + s.u[i] * s.cell_volume(i);
  return U;
}

double generalized_moment(const std::vector<double>& U_faces, double h,
                          double q) {
  if (!(q > 2)) throw std::domain_error("generalized_moment: q <= 2");
  const std::size_t n = U_faces.size();
  double acc = 0.5 * (std::pow(std::abs(U_faces[0]), q) +
                      std::pow(std::abs(U_faces[n - 1]), q));
  for (std::size_t j = 1; j + 1 < n; ++j)
    acc += std::pow(std::abs(U_faces[j]), q);
  return acc * h / q;
}

double sup_norm(const std::vector<double>& x) {
  double m = 0;
  for (double xi : x) m = std::max(m, std::abs(xi));
  return m;
}

namespace {

// Centered gradient with reflected (zero-flux) ghosts.
std::vector<double> centered_gradient(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> g(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double fl = (i > 0) ? f[i - 1] : f[0];
    const double fr = (i + 1 < n) ? f[i + 1] : f[n - 1];
    g[i] = (fr - fl) / (2.0 * h);
  }
  return g;
}

LyapunovSample lyapunov_weighted(const std::vector<double>& u,
                                 const std::vector<double>& v,
                                 const std::vector<double>& vt,
                                 const std::vector<double>& vol, double dx,
                                 double t, const DiffusionSpec& spec) {
  const auto gu = centered_gradient(u, dx);
  const auto gv = centered_gradient(v, dx);
  LyapunovSample out;
  out.t = t;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double uc = std::max(u[i], kPhiFloor);
    out.L += vol[i] * (entropy_phi(spec, uc) - u[i] * v[i] +
                       0.5 * gv[i] * gv[i] + 0.5 * v[i] * v[i]);
    out.dissipation_v += vol[i] * vt[i] * vt[i];
    if (u[i] >= kPhiFloor) {
      const double flux = diffusivity(spec, u[i]) * gu[i] - u[i] * gv[i];
      out.dissipation_flux += vol[i] * flux * flux / u[i];
    }
  }
  return out;
}

}  // namespace

LyapunovSample lyapunov(const GridState& s, const DiffusionSpec& spec,
                        double tau) {
  const auto vt = chemo_rate(s, tau);
  const std::vector<double> vol(s.n_cells, s.h);
  return lyapunov_weighted(s.u, s.v, vt, vol, s.h, s.t, spec);
}

LyapunovSample lyapunov(const RadialGridState& s, const DiffusionSpec& spec) {
  const auto vt = chemo_rate_radial(s);
  std::vector<double> vol(s.n_cells);
  for (std::size_t i = 0; i < s.n_cells; ++i) vol[i] = s.cell_volume(i);
  return lyapunov_weighted(s.u, s.v, vt, vol, s.dr, s.t, spec);
}

double dissipation_residual(const std::vector<LyapunovSample>& traj,
                            double tau) {
  if (traj.size() < 2)
    throw std::invalid_argument("dissipation_residual: need >= 2 samples");
  double acc = 0.0;
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const double dt = traj[k].t - traj[k - 1].t;
    acc += 0.5 * dt *
           (tau * (traj[k].dissipation_v + traj[k - 1].dissipation_v) +
            traj[k].dissipation_flux + traj[k - 1].dissipation_flux);
  }
  return std::abs(traj.back().L + acc - traj.front().L);
}

double chemo_rate_norm(const GridState& s, double tau) {
  const auto vt = chemo_rate(s, tau);
  double acc = 0;
  for (double x : vt) acc += x * x * s.h;
  return std::sqrt(acc);
}

double chemo_rate_norm(const RadialGridState& s) {
  const auto vt = chemo_rate_radial(s);
  double acc = 0;
  for (std::size_t i = 0; i < s.n_cells; ++i)
    acc += vt[i] * vt[i] * s.cell_volume(i);
  return std::sqrt(acc);
}

double moment_rate_identity(const GridState& s, const DiffusionSpec& spec,
                            double tau, double q) {
  if (!(q > 2)) throw std::domain_error("moment_rate_identity: q <= 2");
  const auto U = cumulative(s);
  const double m = U.back();
  std::vector<double> V(s.n_cells + 1, 0.0), Vt(s.n_cells + 1, 0.0);
  const auto vt = chemo_rate(s, tau);
  for (std::size_t i = 0; i < s.n_cells; ++i) {
    V[i + 1] = V[i] + s.v[i] * s.h;
    Vt[i + 1] = Vt[i] + vt[i] * s.h;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < s.n_cells; ++i) {
    const double Uc = 0.5 * (U[i] + U[i + 1]);
    const double Vc = 0.5 * (V[i] + V[i + 1]);
    const double Vtc = 0.5 * (Vt[i] + Vt[i + 1]);
    const double A = tail_primitive(spec, s.u[i]);
    acc += s.h * (-(q - 1.0) * std::pow(Uc, q - 2.0) * s.u[i] * A +
                  std::pow(Uc, q - 1.0) * s.u[i] * (Uc - Vc - tau * Vtc));
  }
  // boundary term (U^(q-1) A(u))|_0^1; U(0) = 0 kills the left end for q > 2
  acc += std::pow(m, q - 1.0) * tail_primitive(spec, s.u[s.n_cells - 1]);
  return acc;
}

MomentRateBound::MomentRateBound(double m, double q, double tau,
                                 const MajorantB& B, double c1, double c2)
    : m_(m), q_(q), tau_(tau), c1_(c1), c2_(c2), B_(&B) {
  if (!(m > 0) || !(q > 2))
    throw std::invalid_argument("MomentRateBound: need m > 0, q > 2");
  mid_coeff_ = (q - 1.0) * std::pow((*B_)(m), 2.0 / q) *
               std::pow(std::pow(m, q + 1.0) / (q + 1.0), (q - 2.0) / 2.0);
  sink_ = std::pow(m, q + 1.0) / (2.0 * q * (q + 1.0));
}

double MomentRateBound::operator()(double r) const {
  if (!(r > 0)) throw std::domain_error("MomentRateBound: r <= 0");
  const double arg = std::pow(m_, q_ + 1.0) / (q_ * (q_ + 1.0) * r);
  return c1_ * r + mid_coeff_ * std::pow(B_->beta(arg), (q_ - 2.0) / 2.0) +
         c2_ * tau_ * std::pow(m_, q_ / 2.0) / std::sqrt(q_) * std::sqrt(r) -
         sink_;
}

double MomentRateBound::at_zero() const {
  return mid_coeff_ * std::pow(B_->beta_limit(), (q_ - 2.0) / 2.0) - sink_;
}

ThetaResult find_theta(const MomentRateBound& bound, double r_hi,
                       std::size_t scan_points) {
  ThetaResult res{ThetaResult::Status::AllNegative, 0.0};
  if (bound.at_zero() >= 0) {
    res.status = ThetaResult::Status::PreconditionFailed;
    return res;
  }
  double lo = 0.0, hi = 0.0;
  bool bracketed = false;
  for (std::size_t k = 1; k <= scan_points; ++k) {
    const double r = r_hi * static_cast<double>(k) / scan_points;
    if (bound(r) >= 0) {
      hi = r;
      lo = r_hi * static_cast<double>(k - 1) / scan_points;
      bracketed = true;
      break;
    }
  }
  if (!bracketed) return res;  // negative on the whole bracket
  for (int it = 0; it < 200 && (hi - lo) > 1e-14 * r_hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (bound(mid) < 0)
      lo = mid;
    else
      hi = mid;
  }
  res.status = ThetaResult::Status::Found;
  res.theta = 0.5 * (lo + hi);
  return res;
}

JensenSlacks jensen_slacks(const GridState& s, const MajorantB& B, double q) {
  if (!(q > 2)) throw std::domain_error("jensen_slacks: q <= 2");
  JensenSlacks out;
  const auto U = cumulative(s);
  const std::size_t n = s.n_cells;
  std::vector<double> Uc(n), Bu(n);
  double IB = 0, m = 0, qMq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Uc[i] = 0.5 * (U[i] + U[i + 1]);
    Bu[i] = B(s.u[i]);
    IB += s.h * Bu[i];
    m += s.h * s.u[i];
    qMq += s.h * std::pow(Uc[i], q);
  }
  if (IB <= 0.0) {
    out.vacuous = true;
    return out;
  }
  double lhs = 0, uq_mean_B = 0;
  for (std::size_t i = 0; i < n; ++i) {
    lhs += s.h * std::pow(Uc[i], q - 2.0) * Bu[i];
    uq_mean_B += s.h * Bu[i] / IB * std::pow(Uc[i], q);
  }
  out.power_step = IB * std::pow(uq_mean_B, (q - 2.0) / q) - lhs;
  out.mass_step = B(m) - IB;
  if (qMq > 0) {
    double u_mean_w = 0, Bu_mean_w = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = s.h * std::pow(Uc[i], q) / qMq;
      u_mean_w += w * s.u[i];
      Bu_mean_w += w * Bu[i];
    }
    out.weighted_step = B(u_mean_w) - Bu_mean_w;
  }
  return out;
}

double radial_second_moment(const std::vector<double>& U_faces, double M,
                            int n_dim, double dr) {
  const std::size_t nf = U_faces.size();
  const double Mn = M / n_dim;
  double acc = 0.0;
  for (std::size_t j = 0; j < nf; ++j) {
    const double r = dr * static_cast<double>(j);
    const double d = Mn - U_faces[j];
    const double w = (j == 0 || j + 1 == nf) ? 0.5 : 1.0;
    acc += w * dr * 0.5 * d * d * std::pow(r, n_dim - 1);
  }
  return acc;
}

double unit_ball_volume(int n_dim) {
  return std::pow(M_PI, 0.5 * n_dim) / std::tgamma(0.5 * n_dim + 1.0);
}

double critical_condition(double M, int n_dim) {
  if (n_dim < 3) throw std::domain_error("critical_condition: n < 3");
  const double e = 2.0 - 2.0 / n_dim;
  const double Mn = M / n_dim;
  return std::pow(2.0 * (n_dim - 1), e) / (e * (e + 1.0)) *
             std::pow(Mn, e + 1.0) -
         std::pow(Mn, 3.0) / 6.0;
}

double critical_mean_density(int n_dim) {
  if (n_dim < 3) throw std::domain_error("critical_mean_density: n < 3");
  const double e = 2.0 - 2.0 / n_dim;
  const double c = 6.0 * std::pow(2.0 * (n_dim - 1), e) / (e * (e + 1.0));
  return n_dim * std::pow(c, 0.5 * n_dim);
}

double second_moment_rate_bound(double M2, double M, int n_dim, double v_linf,
                                double vt_ball_l2, bool half_power_vt) {
  const double Mn = M / n_dim;
  const double e = 1.0 - 2.0 / n_dim;
  double rhs = critical_condition(M, n_dim) +
               (n_dim - 1) * std::pow(2.0 * n_dim, e) * std::pow(Mn, 4.0 / n_dim) *
                   std::pow(M2, e) +
               v_linf * M2;
  const double coef =
      M / (std::pow(static_cast<double>(n_dim), 1.5) *
           std::sqrt(unit_ball_volume(n_dim)));
  rhs += coef * std::sqrt(M2) *
         (half_power_vt ? std::sqrt(vt_ball_l2) : vt_ball_l2);
  return rhs;
}

std::pair<double, double> radial_transport_bound_pair(
    const RadialGridState& s) {
  const int n = s.n_dim;
  const auto U = cumulative(s);
  const double Mn = U.back();  // weighted mass = M/n
  // Exact cumulative of the cellwise-constant density inside cell i:
  // U(r) = U_i + u_i (r^n - r_i^n)/n. All three integrals are evaluated with
  // a per-cell 15-point rule, exact for the polynomial integrands at the
  // dimensions in play, so the continuous Jensen chain applies verbatim.
  double lhs = 0.0, moment_rn = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < s.n_cells; ++i) {
    const double ra = s.face_r(i);
    const double ui = s.u[i];
    const double Ui = U[i];
    auto Uat = [&](double r) {
      return Ui + ui * (std::pow(r, n) - std::pow(ra, n)) / n;
    };
    lhs += quad::gk15(
        [&](double r) {
          return 2.0 * (n - 1) * std::pow(r, n - 2) * (Mn - Uat(r)) * ui *
                 std::pow(r, n - 1);
        },
        ra, s.face_r(i + 1), nullptr);
    moment_rn += quad::gk15(
        [&](double r) {
          return std::pow(r, n) * (Mn - Uat(r)) * ui * std::pow(r, n - 1);
        },
        ra, s.face_r(i + 1), nullptr);
    m2 += quad::gk15(
        [&](double r) {
          const double d = Mn - Uat(r);
          return 0.5 * d * d * std::pow(r, n - 1);
        },
        ra, s.face_r(i + 1), nullptr);
  }
  (void)moment_rn;  // int r^n dmu = n * M_2; kept for cross-checks in tests
  const double e = 1.0 - 2.0 / n;
  const double rhs = (n - 1) * std::pow(2.0 * n, e) * std::pow(Mn, 4.0 / n) *
                     std::pow(m2, e);
  return {lhs, rhs};
}

}  // namespace ks
