// appell.hpp - the conformal (Appell) change of variables on space-time fields.
//
// With D(t) = alpha (1-t) + beta t, sigma = sqrt(alpha beta) / D and
// s = beta t / D,
//   ut(x, t) = sigma^{1/2} u(sigma x, s) exp((alpha - beta) x^2 / (4 (A+iB) D)).
// If u solves dt u = (A+iB)(u_xx + V u) on [0,1] then ut solves the same
// equation with Vt(x,t) = sigma^2 V(sigma x, s). ds/dt = sigma^2.
#pragma once

#include <optional>
#include <vector>

#include "hardylab/grid.hpp"
#include "hardylab/propagator.hpp"

namespace hardylab {

struct AppellParams {
  double alpha = 1.0;
  double beta = 1.0;
  double A = 0.0;
  double B = 1.0;
};

// Throws ParameterOutOfRange ("appell.<param>").
void validate(const AppellParams& params);

double s_map(const AppellParams& params, double t);

struct AppellResult {
  SpaceTimeField transformed;
  std::vector<double> s_of_t;
  // max_t | ||e^{gamma x^2} ut(t)|| - ||e^{c(s) x^2} u(s)|| | / ||e^{c(s) x^2} u(s)||,
  // c(s) = gamma alpha beta / E^2 + (alpha - beta) A / (4 (A^2+B^2) E),
  // E = alpha s + beta (1-s). Zero when no gamma was supplied.
  double norm_identity_residual = 0.0;
  // Estimated temporal interpolation error, relative to max |u|.
  double interpolation_error = 0.0;
  // Slices whose weighted norm converged and entered the residual.
  std::size_t norm_identity_slices = 0;
};

inline constexpr double kInterpolationTolerance = 1e-6;

// u must live on [0, 1] with at least 8 slices. Temporal resampling is the
// modified Akima cubic (per grid point, real and imaginary parts separately),
// spatial resampling is zero-padded spectral. The norm identity is evaluated
// on slices whose weighted norm is tail-converged.
// Throws GridOverflow when sigma x leaves the box where u is not negligible,
// InterpolationUnderresolved when the time sampling is too coarse.
AppellResult appell_transform(const SpaceTimeField& u, const AppellParams& params,
                              std::optional<double> gamma = std::nullopt);

// The exponent c(s) above.
double appell_norm_exponent(const AppellParams& params, double gamma, double s);

// Relative space-time L2 size of dt ut - (A+iB)(ut_xx + Vt ut) with fourth-order
// time differences and a spectral Laplacian. The potential of `flow` (if any)
// is transported; sources are not supported. Needs a uniform time grid.
double appell_equation_residual(const SpaceTimeField& u, const AppellParams& params, const FlowSpec& flow);

// Same residual for u itself under `flow` (the alpha = beta baseline).
double flow_equation_residual(const SpaceTimeField& u, const FlowSpec& flow);

}  // namespace hardylab
