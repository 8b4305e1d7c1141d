#include "ks/quadrature.hpp"

#include <array>
#include <cstdlib>

namespace ks::quad {

namespace {

// Kronrod 15-point nodes/weights on [-1,1]; Gauss 7 weights at the odd nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

}  // namespace

double gk15(const std::function<double(double)>& f, double a, double b,
            double* err) {
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  const double fc = f(c);
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = hw * kXgk[j];
    const double fsum = f(c - x) + f(c + x);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  if (err) *err = std::abs((resk - resg) * hw);
  return resk * hw;
}

namespace {

double adaptive_rec(const std::function<double(double)>& f, double a, double b,
                    double whole, double err, double rel_tol, double abs_tol,
                    int depth) {
  if (err <= rel_tol * std::abs(whole) + abs_tol || depth <= 0) return whole;
  const double c = 0.5 * (a + b);
  double el, er;
  const double left = gk15(f, a, c, &el);
  const double right = gk15(f, c, b, &er);
  return adaptive_rec(f, a, c, left, el, rel_tol, 0.5 * abs_tol, depth - 1) +
         adaptive_rec(f, c, b, right, er, rel_tol, 0.5 * abs_tol, depth - 1);
}

}  // namespace

double adaptive(const std::function<double(double)>& f, double a, double b,
                double rel_tol, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  double err;
  const double whole = gk15(f, a, b, &err);
  return adaptive_rec(f, a, b, whole, err, rel_tol, abs_tol, max_depth);
}

}  // namespace ks::quad
