// hardy.hpp - Gaussian decay-rate fits and the Hardy threshold experiments.
//
// For a nonzero solution of the free Schrodinger flow with
// |u(0)| = O(e^{-x^2/beta^2}) and |u(T)| = O(e^{-x^2/alpha^2}) one always has
// alpha beta >= 4T; Gaussians with the extremal chirp reach equality. Under the
// heat flow a Gaussian reaches Re c(1) = c/(1+4c) < 1/4 at time one.
#pragma once

#include <string>
#include <vector>

#include "hardylab/analytic.hpp"
#include "hardylab/grid.hpp"

namespace hardylab {

struct DecayFit {
  double rate = 0.0;      // gamma in |u| ~ C e^{-gamma x^2}
  double log_scale = 0.0; // log C
  double residual = 0.0;  // RMS of the fit in log|u|
  double window_min = 0.0;
  double window_max = 0.0;  // |x| range of the samples used
  std::size_t samples = 0;
  bool gaussian_tail = false;  // residual below kGaussianResidual
};

inline constexpr double kGaussianResidual = 1e-2;

// Least squares of log|u| against x^2 over samples with |u| > 1e-12 max|u| and
// |x| <= 0.9 L. Throws InsufficientSamples with fewer than 8 usable points.
DecayFit fit_decay(const ComplexField& field);

struct HardyProduct {
  double alpha = 0.0;
  double beta = 0.0;
  double normalized = 0.0;  // alpha beta / (4T)
  bool forbidden = false;   // normalized < 1
  DecayFit initial_fit;
  DecayFit terminal_fit;
};

// Throws BranchOrDecayLoss when a fitted rate is not positive.
HardyProduct hardy_product(const ComplexField& u0, const ComplexField& uT, double T);

struct HeatThreshold {
  double re_c1 = 0.0;     // Re c(1) after one unit of heat flow
  double boundary = 0.0;  // delta* = 1 / sqrt(Re c(1))
  double scanned_boundary = 0.0;
  double delta = 0.0;
  bool finite = false;    // ||e^{x^2/delta^2} u(1)|| < inf
};

// Closed-form verdict plus a bisection scan of the finiteness predicate.
HeatThreshold heat_threshold_experiment(const GaussianState& c0, double delta);

// delta* = 1/sqrt(c/(1+4c)) for real c > 0.
double heat_boundary(double c);

}  // namespace hardylab
