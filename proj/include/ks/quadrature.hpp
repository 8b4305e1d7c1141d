#pragma once

#include <cmath>
#include <functional>

namespace ks::quad {

// Gauss-Kronrod 7/15 pair on [a,b]; returns the K15 value and stores the
// |K15-G7| error estimate in *err.
double gk15(const std::function<double(double)>& f, double a, double b,
            double* err);

// Adaptive bisection driven by the embedded error estimate.
// Stops when the local estimate meets rel_tol*|I| + abs_tol.
double adaptive(const std::function<double(double)>& f, double a, double b,
                double rel_tol = 1e-10, double abs_tol = 1e-14,
                int max_depth = 40);

}  // namespace ks::quad
