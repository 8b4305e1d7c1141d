#include "ks/kinetics.hpp"

#include <algorithm>
#include <cmath>

#include "ks/quadrature.hpp"

namespace ks {

DiffusionSpec DiffusionSpec::Constant(double c) {
  if (!(c > 0)) throw std::invalid_argument("Constant diffusivity needs c > 0");
  DiffusionSpec s;
  s.family = DiffusionFamily::Constant;
  s.constant = c;
  return s;
}

DiffusionSpec DiffusionSpec::IntegrablePower(double p) {
  if (!(p > 1)) throw std::invalid_argument("IntegrablePower needs p > 1");
  DiffusionSpec s;
  s.family = DiffusionFamily::IntegrablePower;
  s.power = p;
  return s;
}

DiffusionSpec DiffusionSpec::CriticalPower(int n) {
  if (n < 3) throw std::invalid_argument("CriticalPower needs n >= 3");
  DiffusionSpec s;
  s.family = DiffusionFamily::CriticalPower;
  s.dim = n;
  return s;
}

double diffusivity(const DiffusionSpec& spec, double u) {
  if (u < 0) throw std::domain_error("diffusivity: u < 0");
  switch (spec.family) {
    case DiffusionFamily::Constant:
      return spec.constant;
    case DiffusionFamily::IntegrablePower:
      return std::pow(1.0 + u, -spec.power);
    case DiffusionFamily::CriticalPower:
      return std::pow(1.0 + u, 1.0 - 2.0 / spec.dim);
  }
  return 0.0;  // unreachable
}

double tail_primitive(const DiffusionSpec& spec, double u) {
  if (u < 0) throw std::domain_error("tail_primitive: u < 0");
  if (!spec.has_integrable_tail())
    throw std::invalid_argument(
        "tail_primitive: diffusivity tail is not integrable");
  const double p = spec.power;
  return -std::pow(1.0 + u, 1.0 - p) / (p - 1.0);
}

double primitive_from_zero(const DiffusionSpec& spec, double u) {
  if (u < 0) throw std::domain_error("primitive_from_zero: u < 0");
  switch (spec.family) {
    case DiffusionFamily::Constant:
      return spec.constant * u;
    case DiffusionFamily::IntegrablePower: {
      const double p = spec.power;
      return (1.0 - std::pow(1.0 + u, 1.0 - p)) / (p - 1.0);
    }
    case DiffusionFamily::CriticalPower: {
      const double g = 2.0 - 2.0 / spec.dim;
      return (std::pow(1.0 + u, g) - 1.0) / g;
    }
  }
  return 0.0;  // unreachable
}

double entropy_phi(const DiffusionSpec& spec, double u) {
  if (!(u > 0)) throw std::domain_error("entropy_phi: u <= 0");
  if (u == 1.0) return 0.0;
  if (spec.family == DiffusionFamily::Constant)
    return spec.constant * (u * std::log(u) - u + 1.0);
  // Phi(u) = int_1^u (u - s) a(s)/s ds (signed), from switching the order of
  // integration in the double integral of Phi''.
  const double val = quad::adaptive(
      [&spec, u](double s) { return (u - s) * diffusivity(spec, s) / s; }, 1.0,
      u);
  return val;
}

MajorantB::MajorantB(std::vector<double> r, std::vector<double> b,
                     double asymptotic_slope, double r_max)
    : r_(std::move(r)),
      b_(std::move(b)),
      asymptotic_slope_(asymptotic_slope),
      r_max_(r_max) {
  if (r_.size() != b_.size() || r_.empty())
    throw std::invalid_argument("MajorantB: breakpoint lists malformed");
}

double MajorantB::operator()(double r) const {
  if (r < 0) throw std::domain_error("MajorantB: r < 0");
  const auto last = r_.size() - 1;
  if (r >= r_[last]) return b_[last] + asymptotic_slope_ * (r - r_[last]);
  const auto it = std::upper_bound(r_.begin(), r_.end(), r);
  const auto j = static_cast<std::size_t>(it - r_.begin());
  const std::size_t i = (j == 0) ? 0 : j - 1;
  if (i == last) return b_[last];
  const double w = (r - r_[i]) / (r_[i + 1] - r_[i]);
  return b_[i] + w * (b_[i + 1] - b_[i]);
}

double MajorantB::beta(double r) const {
  if (!(r > 0)) throw std::domain_error("MajorantB::beta: r <= 0");
  return (*this)(r) / r;
}

namespace {

// g(r) = -r A(r) = r (1+r)^(1-p) / (p-1) and its derivative. g is concave on
// [0, 2/(p-2)) (everywhere for p <= 2), with an interior maximum at 1/(p-2)
// when p > 2; the maximum sits inside the concave region.
double neg_ra(double p, double r) {
  return r * std::pow(1.0 + r, 1.0 - p) / (p - 1.0);
}

double neg_ra_prime(double p, double r) {
  return std::pow(1.0 + r, -p) * (1.0 + r * (2.0 - p)) / (p - 1.0);
}

}  // namespace

MajorantB build_majorant(const DiffusionSpec& spec, double r_max,
                         std::size_t samples) {
  if (!spec.has_integrable_tail())
    throw std::invalid_argument("build_majorant: tail is not integrable");
  if (!(r_max > 0) || samples < 3)
    throw std::invalid_argument("build_majorant: need r_max > 0, samples >= 3");
  const double p = spec.power;

  // Tangent envelope: a chord hull of samples undershoots a concave g between
  // nodes, so B is the lower envelope of the tangent lines at the nodes
  // instead. Each tangent anchored in the concave region dominates g on all
  // of [0, inf) once its slope is nonnegative, so the envelope is an exact
  // piecewise-linear concave majorant, equal to g at every node.
  double node_end = r_max;
  if (p > 2.0) node_end = std::min(r_max, 1.0 / (p - 2.0));

  std::vector<double> slope(samples), icpt(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double r = node_end * static_cast<double>(i) / (samples - 1);
    slope[i] = neg_ra_prime(p, r);
    icpt[i] = neg_ra(p, r) - slope[i] * r;
  }

  std::vector<double> br, bb;
  br.push_back(0.0);
  bb.push_back(icpt[0]);  // tangent at r=0 passes through the origin
  for (std::size_t i = 0; i + 1 < samples; ++i) {
    const double ds = slope[i] - slope[i + 1];
    if (ds <= 1e-15 * std::abs(slope[i])) continue;  // collinear tangents
    const double x = (icpt[i + 1] - icpt[i]) / ds;
    if (x > br.back()) {
      br.push_back(x);
      bb.push_back(icpt[i] + slope[i] * x);
    }
  }
  if (node_end > br.back()) {
    br.push_back(node_end);
    bb.push_back(neg_ra(p, node_end));
  }
  return MajorantB(std::move(br), std::move(bb), slope[samples - 1], r_max);
}

}  // namespace ks
