// carleman.hpp - quadrature checks of the moving-Gaussian Carleman inequalities
//   R sqrt(eps / (8 mu)) ||e^phi g|| <= ||e^phi P g||,
// P = dt - i dxx (Schrodinger) or dt - dxx (parabolic), phi = MovingCarleman,
// on compactly supported smooth bumps, plus the cutoff construction and the
// admissible (mu, eps) window.
//
// With f = e^phi g and c = R t (1-t), e^phi P g = dt f - S f - A f where
//   Schrodinger: S = -4 i mu (x+c) dx - 2 i mu + phi_t,   A = i dxx + 4 i mu^2 (x+c)^2
//   parabolic:   S = dxx + 4 mu^2 (x+c)^2 + phi_t,        A = -4 mu (x+c) dx - 2 mu
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hardylab/grid.hpp"
#include "hardylab/weight.hpp"

namespace hardylab {

struct CarlemanConfig {
  double mu = 1.0;
  double epsilon = 0.5;
  double R = 1.0;
  CarlemanOperator op = CarlemanOperator::Schrodinger;

  MovingCarleman weight() const { return {mu, R, epsilon, op}; }
  double constant() const;  // R sqrt(eps / (8 mu))
};

// Throws ParameterOutOfRange ("carleman.<param>").
void validate(const CarlemanConfig& cfg);

// g(x, t) = amplitude psi((x - cx)/wx) psi((t - ct)/wt), psi(s) = exp(1 - 1/(1 - s^2)).
struct BumpField {
  double center_x = 0.0;
  double width_x = 1.0;
  double center_t = 0.5;
  double width_t = 0.25;
  cplx amplitude = 1.0;

  cplx value(double x, double t) const;
  cplx dt(double x, double t) const;
  cplx dx(double x, double t) const;
  cplx dxx(double x, double t) const;
};

// Throws SupportOutOfDomain unless the support sits inside (-half_width, half_width) x (0, 1).
BumpField make_bump(double center_x, double width_x, double center_t, double width_t, cplx amplitude,
                    double half_width);

// psi and its first two derivatives (zero outside (-1, 1)).
double bump_profile(double s);
double bump_profile_d1(double s);
double bump_profile_d2(double s);

struct CarlemanReport {
  double lhs = 0.0;  // constant * ||e^phi g||
  double rhs = 0.0;  // ||e^phi P g||
  double constant = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool pass = true;     // margin >= -1e-8 rhs
};

// Tensor midpoint rule with `nodes` points per axis on the bump's support.
CarlemanReport carleman_check(const BumpField& g, const CarlemanConfig& cfg, std::size_t nodes = 256);

struct CarlemanSweepRow {
  std::size_t bump_index;
  CarlemanConfig cfg;
  CarlemanReport report;
};

struct CarlemanSweepSpec {
  std::size_t bumps = 50;
  std::vector<double> mu{0.5, 1.0, 2.0};
  std::vector<double> epsilon{0.1, 0.5, 1.0};
  std::vector<double> R{1.0, 5.0, 10.0};
  CarlemanOperator op = CarlemanOperator::Schrodinger;
  std::uint64_t seed = 20240101;
  double half_width = 8.0;
  std::size_t nodes = 128;
  unsigned threads = 1;
};

// Seeded random bumps crossed with the parameter grid; rows in (bump, mu, eps, R) order.
std::vector<BumpField> random_bumps(std::size_t count, std::uint64_t seed, double half_width);
std::vector<CarlemanSweepRow> carleman_sweep(const CarlemanSweepSpec& spec);

// CSV columns mu,epsilon,R,operator,lhs,rhs,margin,pass.
std::string to_csv(const std::vector<CarlemanSweepRow>& rows);

struct ExpansionCheck {
  double direct = 0.0;       // int_t Re(S_t f + S A f - A S f, f), operators applied spectrally
  double expanded = 0.0;     // termwise sum of squares, analytic derivatives
  double lower_bound = 0.0;  // eps R^2 / (8 mu) int |f|^2
  double slack = 0.0;        // expanded - lower_bound
  double residual = 0.0;     // |direct - expanded| / |expanded|
  std::vector<std::string> active_terms;
};

// Evaluated at `time_nodes` times across the bump's support.
ExpansionCheck commutator_expansion_check(const BumpField& g, const CarlemanConfig& cfg,
                                          std::size_t points = 1024, std::size_t time_nodes = 9);

struct ParameterWindow {
  double lower = 0.0;  // (1+eps)^{3/2} / (2 (1-eps)^3), excluded
  double upper = 0.0;  // gamma / (1+eps), included
  bool nonempty = false;
  bool contains(double mu) const { return nonempty && mu > lower && mu <= upper; }
};

// gamma > 0, 0 < eps < 1.
ParameterWindow parameter_window(double gamma, double epsilon);

struct CutoffResult {
  SpaceTimeField g;             // theta_M(x) eta_R(t) u
  SpaceTimeField defect_time;   // theta_M eta_R' u
  SpaceTimeField defect_space;  // -i (2 theta_M' u_x + theta_M'' u) eta_R
};

// theta_M = 1 on |x| <= M, 0 on |x| >= 2M; eta_R = 1 on [1/R, 1-1/R], 0 within
// 1/(2R) of the endpoints. Needs 2M < L and R > 2.
CutoffResult cutoff_apply(const SpaceTimeField& u, double M, double R_cut);

double cutoff_theta(double x, double M);
double cutoff_theta_d1(double x, double M);
double cutoff_theta_d2(double x, double M);
double cutoff_eta(double t, double R_cut);
double cutoff_eta_d1(double t, double R_cut);

struct CorePhaseRow {
  double mu;
  double epsilon;
  bool condition;          // 4 mu^2 (1-eps)^6 - (1+eps)^3 > 0
  double min_phase;        // min of the Schrodinger phase over the core region, R = 1
  double displayed_bound;  // (4 mu^2 (1-eps)^6 - (1+eps)^3) / (16 mu)
};

// Core region |x| <= eps (1-eps)^2 R / 4, t in [(1-eps)/2, (1+eps)/2]; the
// phase scales as R^2 so R = 1.
std::vector<CorePhaseRow> core_phase_scan(const std::vector<double>& mu, const std::vector<double>& epsilon,
                                          std::size_t samples = 41);

}  // namespace hardylab
