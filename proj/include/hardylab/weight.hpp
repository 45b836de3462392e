// weight.hpp - exponential weight families e^{phase(x,t)} and weighted norms.
//
// Every profile is described by its phase; the weight itself is exp(phase).
// Weighted norms are evaluated in log space and report how much of the
// integrand sits at the boundary cells, since a Gaussian weight silently
// truncated by the periodic box is the dominant failure mode.
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "hardylab/grid.hpp"

namespace hardylab {

// gamma * x^2.
struct StaticGaussian {
  double gamma;
};

// a(t) x^2 with a(t) = gamma A / (A + 4 gamma (A^2 + B^2) t), the solution of
// a' = -4 (A + B^2/A) a^2, a(0) = gamma.
struct LemmaOneRate {
  double gamma;
  double A;
  double B;
};

// x^2 / (alpha t + (1 - t) beta)^2; interpolates 1/beta^2 at t=0 and 1/alpha^2 at t=1.
struct TimeInterpolated {
  double alpha;
  double beta;
};

enum class CarlemanOperator { Schrodinger, Parabolic };

// mu (x + R t(1-t))^2 - (1+eps) R^2 t(1-t) / (16 mu), plus R^2 t(1-t)(1-2t)/6
// for the parabolic operator.
struct MovingCarleman {
  double mu;
  double R;
  double epsilon;
  CarlemanOperator op = CarlemanOperator::Schrodinger;
};

// lambda * x.
struct LinearExponential {
  double lambda;
};

// gamma * (theta_rho * phi_R)(x), phi_R = min(x^2, R^2).
struct TruncatedGaussian {
  double gamma;
  double truncation_radius;
  double mollification_radius;
};

// gamma * (theta_rho * phi_a)(x), phi_a = x^2 inside |x| < 1 and
// (2|x|^{2-a} - a)/(2 - a) outside.
struct RegularizedConvex {
  double gamma;
  double a_exponent;
  double mollification_radius;
};

using WeightProfile = std::variant<StaticGaussian, LemmaOneRate, TimeInterpolated, MovingCarleman,
                                   LinearExponential, TruncatedGaussian, RegularizedConvex>;

std::string profile_name(const WeightProfile& profile);

// Throws ParameterOutOfRange ("weight.<param>") for invalid parameters.
void validate(const WeightProfile& profile);

double evaluate_phase(const WeightProfile& profile, double x, double t);

struct WeightedNormReport {
  double value = 0.0;
  double tail_ratio = 0.0;  // edge integrand / max integrand
  bool converged = true;    // tail_ratio < kTailThreshold
};

inline constexpr double kTailThreshold = 1e-10;
// Relative round-off level of spectrally computed fields.
inline constexpr double kRoundoffFloor = 1e-13;

// ||e^{phase(., t)} f||. Samples with |f| < noise_floor max |f| count as
// zero, and the tail ratio compares the weighted integrand at the outermost
// remaining samples with its maximum. With the default floor of zero this is
// the box boundary; computed fields should pass kRoundoffFloor so that a
// weight amplifying round-off reads as divergent rather than silently large.
// With strict set, a non-converged tail throws WeightedNormDivergent.
WeightedNormReport weighted_l2_norm(const ComplexField& field, const WeightProfile& profile, double t,
                                    bool strict = false, double noise_floor = 0.0);

// e^{phase(., t)} f as a field. Throws WeightedNormDivergent if it overflows.
ComplexField apply_weight(const ComplexField& field, const WeightProfile& profile, double t);

// Worst relative error of  int e^{2 sqrt(gamma) lambda x - lambda^2/2} d lambda
// against sqrt(2 pi) e^{2 gamma x^2}, integrating adaptively in lambda.
double gaussian_average_identity_check(double gamma, const std::vector<double>& x_samples);

// --- mollified weights ----------------------------------------------------

// Unit-mass C^infinity bump exp(-1/(1-s^2)) / Z supported on (-1, 1).
double mollifier_kernel(double s);
// int s^2 theta(s) ds; the mollified x^2 equals x^2 + rho^2 * this.
double mollifier_second_moment();

// (theta_rho * min(x^2, R^2))(x)
double mollified_truncated_square(double x, double truncation_radius, double rho);
// (theta_rho * phi_a)(x)
double mollified_convex_phase(double x, double a_exponent, double rho);
// d^4/dx^4 of the mollified phi_a, computed as theta_rho'' * phi_a''.
double mollified_convex_bilaplacian(double x, double a_exponent, double rho);

// sup_x |d^4/dx^4 (theta_rho * phi_a)|, sampled on a fine grid of [0, 4].
double mollified_bilaplacian_bound(double a_exponent, double rho);

}  // namespace hardylab
