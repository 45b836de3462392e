// convexity.hpp - H(t) = ||f(t)||^2, D(t) = (S f, f), N = D/H for f = e^{phase} u,
// discrete log-convexity diagnostics, the commutator quadratic form for the
// weight gamma x^2, and the Hermite / gradient inequalities.
//
// For f = e^{gamma x^2} u with dt u = (A + iB) u_xx the conjugated operator
// splits as dt f = S f + A f with
//   S = A (dxx + 4 gamma^2 x^2) - i B gamma (4 x dx + 2)   (symmetric)
//   A = i B (dxx + 4 gamma^2 x^2) - A gamma (4 x dx + 2)   (skew-symmetric)
// and (S_t f + [S, A] f, f) = gamma (A^2 + B^2) int 8 |f'|^2 + 32 gamma^2 x^2 |f|^2.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hardylab/grid.hpp"
#include "hardylab/weight.hpp"

namespace hardylab {

struct FlowCoefficients {
  double A = 0.0;
  double B = 1.0;
};

struct ConvexityTrace {
  std::vector<double> times;
  std::vector<double> H;
  std::vector<double> logH;
  // D and N are filled only for StaticGaussian weights with known coefficients.
  std::vector<double> D;
  std::vector<double> N;
  // Unscaled centred differences logH[k+1] - 2 logH[k] + logH[k-1] at interior
  // nodes (index 0 corresponds to times[1]).
  std::vector<double> second_diff_logH;

  bool has_operator() const { return !D.empty(); }
  double step() const;
};

// Strict tail checks at every slice; throws NonUniformTimeGrid when second
// differences are requested on a non-uniform grid. Samples below
// noise_floor * max|u| are treated as zero (use kRoundoffFloor for computed
// fields).
ConvexityTrace build_trace(const SpaceTimeField& u, const WeightProfile& profile,
                           std::optional<FlowCoefficients> flow = std::nullopt, double noise_floor = 0.0);

// Trace from raw H samples (synthetic experiments and tests).
ConvexityTrace trace_from_values(std::vector<double> times, std::vector<double> H);

struct LogConvexityReport {
  double worst_violation;           // min_k d2logH_k / dt^2 + slack
  double min_second_diff;           // min unscaled second difference
  double worst_interpolation_margin;  // min_k [(1-s) logH_0 + s logH_n + slack - logH_k]
};

// The interpolation H(t) <= e^slack H(t0)^{1-s} H(t1)^s uses s = (t - t0)/(t1 - t0)
// over the trace's own interval.
LogConvexityReport log_convexity_check(const ConvexityTrace& trace, double slack);

ComplexField apply_symmetric_part(const ComplexField& f, double gamma, double A, double B);
ComplexField apply_antisymmetric_part(const ComplexField& f, double gamma, double A, double B);

struct CommutatorForm {
  double gamma = 0.0;
  double A = 0.0;
  double B = 0.0;
  double value_of_form = 0.0;  // gamma (A^2+B^2)(8 gradient_part + 32 gamma^2 moment_part)
  double direct_value = 0.0;   // Re(S(Af) - A(Sf), f) from spectral operator application
  double gradient_part = 0.0;  // int |f'|^2
  double moment_part = 0.0;    // int x^2 |f|^2
};

CommutatorForm commutator_form(const ComplexField& f, double gamma, double A, double B);

struct HermiteBound {
  double lhs = 0.0;  // int |f'|^2 + 4 gamma^2 x^2 |f|^2
  double rhs = 0.0;  // 2 gamma int |f|^2
  double margin = 0.0;
};

HermiteBound hermite_lower_bound_check(const ComplexField& f, double gamma);

struct GradientEstimate {
  double lhs = 0.0;  // ||sqrt(s(1-s)) e^{gamma x^2} u_x|| + ||sqrt(s(1-s)) |x| e^{gamma x^2} u||
  double rhs = 0.0;  // (1 + M1) sup ||e^{gamma x^2} u|| + source_sup
  double ratio = 0.0;
};

// Space-time norms use s = (t - t0)/(t1 - t0) in [0, 1] and Simpson in s.
GradientEstimate gradient_estimate_check(const SpaceTimeField& u, double gamma, double m1,
                                         double source_sup = 0.0);

struct SecondDerivativeIdentity {
  double residual = 0.0;           // max relative |lhs - rhs|
  double max_abs_difference = 0.0;
  std::vector<double> times;
  std::vector<double> lhs;         // second differences of H
  std::vector<double> rhs;         // assembled right-hand side
};

// d2H = 2 d/dt Re(dt f - S f - A f, f) + 2 (S_t f + [S, A] f, f)
//       + ||dt f - A f + S f||^2 - ||dt f - A f - S f||^2
// evaluated on f = e^{gamma x^2} u with fourth-order centred differences in
// time. Requires a uniform time grid with at least nine slices; the identity
// is reported at slices 4..n-5.
SecondDerivativeIdentity second_derivative_identity_check(const SpaceTimeField& u, double gamma, double A,
                                                          double B);

// CSV with columns t,H,logH,D,N,d2logH.
std::string to_csv(const ConvexityTrace& trace);

}  // namespace hardylab
