// counterexample.hpp - the even weight a(t) solving
//   32 a^3 + a'' - 2 a'^2 / a = 0,  a(0) = 1, a'(0) = 0,
// its scaling family a_R(t) = R a(R t), and the truncated-integral table that
// shows the formal convexity inequality failing for the explicit free solution.
//
// With b = 1/a the equation becomes b'' = 32 / b, whose first integral with
// b(0) = 1, b'(0) = 0 is b'^2 = 64 ln b.
#pragma once

#include <memory>
#include <string>
#include <vector>

namespace hardylab {

struct OdeTrajectory {
  std::vector<double> times;  // uniform from 0
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> b_prime;
  double step = 0.0;
  int order = 4;

  double t_max() const { return times.back(); }
};

inline constexpr double kMaxOdeStep = 1e-3;

// Classical RK4 on (b, b'). Throws StepTooLarge for step > 1e-3.
OdeTrajectory solve_weight_ode(double t_max, double step = kMaxOdeStep);

struct WeightJet {
  double a = 0.0;
  double a1 = 0.0;  // a'
  double a2 = 0.0;  // a''
};

// Quintic Hermite dense output of b (values, b', b'' = 32/b) mapped to a = 1/b.
class WeightInterpolant {
 public:
  explicit WeightInterpolant(const OdeTrajectory& traj);
  WeightJet operator()(double t) const;  // t in [0, t_max]
  double t_max() const noexcept { return t_max_; }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  double t_max_;
};

// max_t |b'^2 - 64 ln b| over the trajectory nodes.
double first_integral_residual(const OdeTrajectory& traj);

// R a(R |t|). Throws TrajectoryTooShort when R |t| > t_max.
double scaled_weight(const WeightInterpolant& a, double R, double t);
WeightJet scaled_weight_jet(const WeightInterpolant& a, double R, double t);

// max over `times` of |32 a_R^3 + a_R'' - 2 a_R'^2 / a_R|.
double ode_residual(const WeightInterpolant& a, double R, const std::vector<double>& times);

struct DivergenceRow {
  double R;
  double L;
  double log_H0;        // log of int_{-L}^{L} e^{2R x^2} |u(x,0)|^2
  double H0_truncated;  // exp(log_H0), may be inf
  double H_minus1;      // int_{-L}^{L} e^{2 a_R(1) x^2} |u(x,-1)|^2
  double H_plus1;
  bool h0_converged;    // relative change from the previous L below 1e-6
  bool h1_converged;
};

struct DivergenceTable {
  double R;
  double weight_rate_at_one;  // a_R(1) = R a(R)
  bool h0_divergent_regime;   // 2R >= 1/2: e^{(2R - 1/2) x^2} is not integrable
  std::string regime_note;
  std::vector<DivergenceRow> rows;
};

inline constexpr double kConvergenceTolerance = 1e-6;

// u is the explicit free solution (t - i)^{-1/2} e^{i x^2 / (4 (t - i))}.
// Half-widths must be increasing. Integrals are evaluated in log space.
DivergenceTable divergence_demonstration(const WeightInterpolant& a, double R, const std::vector<double>& half_widths);

// CSV columns R,L,H0_truncated,log_H0,H_minus1,H_plus1,h0_converged,h1_converged.
std::string to_csv(const DivergenceTable& table);

}  // namespace hardylab
