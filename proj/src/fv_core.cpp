#include "fv_core.hpp"

#include <algorithm>
#include <limits>

namespace ks::detail {

Metric interval_metric(std::size_t n_cells) {
  Metric m;
  m.dx = 1.0 / static_cast<double>(n_cells);
  m.face_w.assign(n_cells + 1, 1.0);
  m.vol.assign(n_cells, m.dx);
  return m;
}

Metric radial_metric(int n_dim, std::size_t n_cells) {
  Metric m;
  m.dx = 1.0 / static_cast<double>(n_cells);
  m.face_w.resize(n_cells + 1);
  m.vol.resize(n_cells);
  for (std::size_t j = 0; j <= n_cells; ++j)
    m.face_w[j] = std::pow(m.dx * static_cast<double>(j), n_dim - 1);
  for (std::size_t i = 0; i < n_cells; ++i) {
    const double a = m.dx * static_cast<double>(i);
    const double b = m.dx * static_cast<double>(i + 1);
    m.vol[i] = (std::pow(b, n_dim) - std::pow(a, n_dim)) / n_dim;
  }
  return m;
}

void solve_tridiagonal(std::vector<double>& sub, std::vector<double>& diag,
                       std::vector<double>& super, std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * super[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;)
    rhs[i] = (rhs[i] - super[i] * rhs[i + 1]) / diag[i];
}

namespace {

bool all_finite(const std::vector<double>& x) {
  for (double xi : x)
    if (!std::isfinite(xi)) return false;
  return true;
}

// (r + 1) v' - div(W grad v')/vol = r v + u; r = tau/dt for an implicit Euler
// step, r = 0 for the steady response. M-matrix, so v' >= 0.
std::vector<double> helmholtz_v(const std::vector<double>& u,
                                const std::vector<double>& v, double r,
                                const Metric& m) {
  const std::size_t n = v.size();
  std::vector<double> sub(n, 0.0), diag(n, 0.0), super(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double wl = m.face_w[i] / (m.vol[i] * m.dx);
    const double wr = m.face_w[i + 1] / (m.vol[i] * m.dx);
    const double cl = (i > 0) ? wl : 0.0;        // Neumann: zero-flux faces
    const double cr = (i + 1 < n) ? wr : 0.0;
    sub[i] = -cl;
    super[i] = -cr;
    diag[i] = r + 1.0 + cl + cr;
    rhs[i] = r * v[i] + u[i];
  }
  solve_tridiagonal(sub, diag, super, rhs);
  return rhs;
}

std::vector<double> implicit_v(const std::vector<double>& u,
                               const std::vector<double>& v, double tau,
                               double dt, const Metric& m) {
  return helmholtz_v(u, v, tau / dt, m);
}

// Weighted face fluxes W_j F_j, F = abar (u_R - u_L)/dx - u_up (v_R - v_L)/dx,
// upwinding the advected cell against the drift sign. Wall fluxes vanish.
void weighted_fluxes(const std::vector<double>& u, const std::vector<double>& v,
                     const DiffusionSpec& spec, const Metric& m,
                     std::vector<double>& wf) {
  const std::size_t n = u.size();
  wf.assign(n + 1, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    const double abar =
        0.5 * (diffusivity(spec, u[j - 1]) + diffusivity(spec, u[j]));
    const double dv = (v[j] - v[j - 1]) / m.dx;
    const double uup = (dv > 0) ? u[j - 1] : u[j];
    wf[j] = m.face_w[j] * (abar * (u[j] - u[j - 1]) / m.dx - uup * dv);
  }
}

// Largest dt keeping every cell nonnegative: per-cell outflow coefficient
// c_i with u_i' >= u_i (1 - dt c_i).
double positivity_dt(const std::vector<double>& u, const std::vector<double>& v,
                     const DiffusionSpec& spec, const Metric& m) {
  const std::size_t n = u.size();
  double cmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double c = 0.0;
    if (i + 1 < n) {
      const double abar =
          0.5 * (diffusivity(spec, u[i]) + diffusivity(spec, u[i + 1]));
      const double dv = (v[i + 1] - v[i]) / m.dx;
      c += m.face_w[i + 1] * (abar / m.dx + std::max(dv, 0.0));
    }
    if (i > 0) {
      const double abar =
          0.5 * (diffusivity(spec, u[i - 1]) + diffusivity(spec, u[i]));
      const double dv = (v[i] - v[i - 1]) / m.dx;
      c += m.face_w[i] * (abar / m.dx + std::max(-dv, 0.0));
    }
    cmax = std::max(cmax, c / m.vol[i]);
  }
  return (cmax > 0) ? 1.0 / cmax : std::numeric_limits<double>::infinity();
}

}  // namespace

std::vector<double> steady_v(const std::vector<double>& u, const Metric& m) {
  return helmholtz_v(u, std::vector<double>(u.size(), 0.0), 0.0, m);
}

std::vector<double> v_rhs(const std::vector<double>& u,
                          const std::vector<double>& v, double tau,
                          const Metric& m) {
  const std::size_t n = v.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double lap = 0.0;
    if (i + 1 < n) lap += m.face_w[i + 1] * (v[i + 1] - v[i]) / m.dx;
    if (i > 0) lap -= m.face_w[i] * (v[i] - v[i - 1]) / m.dx;
    out[i] = (lap / m.vol[i] - v[i] + u[i]) / tau;
  }
  return out;
}

StepOutcome fv_step(std::vector<double>& u, std::vector<double>& v, double& t,
                    double tau, const DiffusionSpec& spec,
                    const TimeControls& controls, const Metric& m,
                    double u_blowup_threshold) {
  StepOutcome out;
  if (!all_finite(u) || !all_finite(v)) {
    out.flag = StepFlag::NonFiniteDetected;
    return out;
  }
  if (*std::max_element(u.begin(), u.end()) >= u_blowup_threshold) {
    out.flag = StepFlag::BlowupThresholdHit;
    return out;
  }

  double dt = controls.cfl_safety * positivity_dt(u, v, spec, m);
  dt = std::min(dt, controls.dt_max);
  if (dt < controls.dt_min) {
    out.flag = StepFlag::DtFloorHit;
    return out;
  }
  // A short final step toward t_end is not a floor hit.
  dt = std::min(dt, controls.t_end - t);
  if (!(dt > 0)) {
    out.flag = StepFlag::DtFloorHit;
    return out;
  }

  const std::size_t n = u.size();
  std::vector<double> vn, un(n), wf;
  for (;;) {
    vn = implicit_v(u, v, tau, dt, m);
    weighted_fluxes(u, vn, spec, m, wf);
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      un[i] = u[i] + dt / m.vol[i] * (wf[i + 1] - wf[i]);
      if (un[i] < 0.0) ok = false;
    }
    if (ok) break;
    // dt was limited against the pre-solve v; the updated drift can still
    // push a cell negative, so back off.
    dt *= 0.5;
    if (dt < controls.dt_min) {
      out.flag = StepFlag::DtFloorHit;
      return out;
    }
  }
  if (!all_finite(un) || !all_finite(vn)) {
    out.flag = StepFlag::NonFiniteDetected;
    return out;
  }
  u = std::move(un);
  v = std::move(vn);
  t += dt;
  out.dt_used = dt;
  return out;
}

}  // namespace ks::detail
