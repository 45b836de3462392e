// propagator.hpp - evolution engines for dt u = (A + iB)(u_xx + V u + F).
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "hardylab/grid.hpp"

namespace hardylab {

// Complex, possibly time-dependent potential V2(x, t) with declared bounds.
struct TimeDependentPotential {
  std::function<cplx(double x, double t)> eval;
  double sup_abs = 0.0;   // >= sup |V2|
  double sup_imag = 0.0;  // >= sup |Im V2|
};

struct FlowSpec {
  double A = 0.0;
  double B = 1.0;
  // Real static potential V1 sampled on the flow grid.
  std::optional<std::vector<double>> static_potential;
  // Declared bound M1 >= max |V1|; derived from the samples when absent.
  std::optional<double> declared_m1;
  std::optional<TimeDependentPotential> time_potential;
  // Source F(x, t); empty when the flow is homogeneous.
  std::function<cplx(double x, double t)> source;

  bool has_potential() const { return static_potential.has_value() || time_potential.has_value(); }
  double m1() const;
  // Bound used for the growth check: M1 + sup |V2|.
  double potential_bound() const;
};

// Throws ParameterOutOfRange for A < 0, a trivial flow, or a declared M1
// below the sampled maximum of |V1|.
void validate(const FlowSpec& spec, const Grid& grid);

// Exact multiplier e^{-(A+iB) k^2 t}. Throws BackwardDissipative for A > 0, t < 0.
ComplexField free_flow(const ComplexField& u0, double A, double B, double t);

// e^{z d_xx} applied spectrally, Re z >= 0.
ComplexField heat_semigroup(const ComplexField& u0, cplx z);

inline constexpr double kDefaultTimeStep = 1e-3;

// Strang splitting: half potential/source step, exact kinetic step, half
// potential/source step; V and F are frozen at each substep midpoint. The
// returned slices sit at t_grid (t_grid[0] is the time of u0). Throws
// UnstableStep if a homogeneous flow grows beyond its a-priori bound.
SpaceTimeField split_step_flow(const ComplexField& u0, const FlowSpec& spec, const std::vector<double>& t_grid,
                               double max_step = kDefaultTimeStep);

// Single-endpoint form of split_step_flow.
ComplexField propagate(const ComplexField& u0, const FlowSpec& spec, double t0, double t1,
                       double max_step = kDefaultTimeStep);

// Relative L2 distance between e^{(z1+z2)Δ}u0 and e^{z1Δ}e^{z2Δ}u0.
double semigroup_identity_check(const ComplexField& u0, cplx z1, cplx z2);

struct RegularizedFlow {
  double epsilon;
  SpaceTimeField base;
  SpaceTimeField result;      // u_eps(t) = e^{eps t H} u(t), H = Δ + V1
  double duhamel_residual;    // max relative gap to the Duhamel construction
};

// Regularizes a solution of dt u = i(H u + V2 u) by the heat semigroup. The
// cross-check rebuilds u_eps from u(0) through
//   u_eps(t) = e^{(eps+i)tH}u(0) + (eps+i) int_0^t e^{(eps+i)(t-s)H} F_eps(s) ds,
//   F_eps(s) = i/(eps+i) e^{eps s H}(V2(s) u(s)),
// with composite Simpson in s, evaluated at even-indexed slices.
RegularizedFlow regularize_flow(const SpaceTimeField& u, double epsilon,
                                const std::optional<std::vector<double>>& v1 = std::nullopt,
                                const std::optional<TimeDependentPotential>& v2 = std::nullopt,
                                double max_step = kDefaultTimeStep);

struct DecayBoundReport {
  double lhs = 0.0;          // e^{-M_T} ||e^{a(T) x^2} u(T)||
  double rhs = 0.0;          // ||e^{gamma x^2} u(0)|| + |A+iB| int_0^T ||e^{a(t)x^2} F(t)|| dt
  double margin = 0.0;       // rhs - lhs
  double weight_rate = 0.0;  // a(T) = gamma A / (A + 4 gamma (A^2 + B^2) T)
  double m_t = 0.0;          // int_0^T ||A (Re V)^+ - B Im V||_inf dt
  double lhs_tail_ratio = 0.0;  // weighted tail of u(T) at the round-off edge
};

// Requires A > 0. The initial and source norms are strict; the norm of the
// computed u(T) is not (see lhs_tail_ratio) but throws if it overflows.
DecayBoundReport lemma1_decay_check(const ComplexField& u0, const FlowSpec& spec, double gamma, double T,
                                    std::size_t time_samples = 101);

}  // namespace hardylab
