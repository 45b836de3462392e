// analytic.hpp - closed-form Gaussian states under dt u = (A + iB) u_xx.
//
// u(x) = amplitude * exp(-c x^2) stays Gaussian under every flow with A >= 0:
// c -> c / w, amplitude -> amplitude * w^{-1/2}, w = 1 + 4 (A + iB) c t.
// These are the ground-truth oracles for the spectral machinery.
#pragma once

#include <optional>
#include <vector>

#include "hardylab/grid.hpp"

namespace hardylab {

struct GaussianState {
  cplx c;  // Re c > 0
  cplx amplitude = 1.0;

  cplx operator()(double x) const { return amplitude * std::exp(-c * x * x); }
  ComplexField sample(const Grid& grid) const;
};

// Throws BranchOrDecayLoss when Re c of the result is not positive.
GaussianState evolve_gaussian(const GaussianState& state, double A, double B, double t);

// Evolves along increasing times, choosing the square-root branch of the
// amplitude factor continuously from one time to the next.
std::vector<GaussianState> evolve_gaussian_path(const GaussianState& state, double A, double B,
                                                const std::vector<double>& times);

// ||e^{gamma x^2} u||; empty when the weight beats the decay (gamma >= Re c).
std::optional<double> gaussian_weighted_norm(const GaussianState& state, double gamma);

struct HardyExtremalPair {
  GaussianState initial;  // c = 1/beta^2 + i/(4T)
  GaussianState terminal;
  double terminal_rate;   // Re c(T) = 1/alpha^2
  double alpha;           // 1/sqrt(terminal_rate)
  double predicted_alpha; // 4T/beta
};

HardyExtremalPair hardy_extremal_pair(double beta, double T);

// The free solution (t - i)^{-1/2} exp(i x^2 / (4 (t - i))) of dt u = i u_xx.
cplx explicit_solution(double x, double t);
// Its analytic time derivative.
cplx explicit_solution_dt(double x, double t);

}  // namespace hardylab
