// quadrature.hpp - one-dimensional integration helpers.
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hardylab {

// Composite Simpson on uniformly spaced samples. An even sample count falls
// back to Simpson 3/8 on the last three intervals; two samples use the
// trapezoid rule.
double simpson(std::span<const double> values, double step);

// Adaptive Gauss-Kronrod (Boost.Math) on [a, b].
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-13);

// Composite 20-point Gauss-Legendre over [a, b] split into `pieces` panels.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int pieces = 1);

// Least-squares slope of y against x.
double linear_fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace hardylab
