#include "hardylab/counterexample.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/interpolators/quintic_hermite.hpp>

#include "hardylab/analytic.hpp"
#include "hardylab/csv.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab {

struct WeightInterpolant::Impl {
  boost::math::interpolators::quintic_hermite<std::vector<double>> b;
};

namespace {

using State = std::array<double, 2>;  // (b, b')

State rhs(const State& y) { return {y[1], 32.0 / y[0]}; }

State axpy(const State& y, double h, const State& k) { return {y[0] + h * k[0], y[1] + h * k[1]}; }

// log of int_{-L}^{L} exp(log_f(x)) dx for an even integrand.
double log_integral(const std::function<double(double)>& log_f, double L) {
  const double peak = std::max(log_f(0.0), log_f(L));
  const double rest = adaptive_integrate([&](double x) { return std::exp(log_f(x) - peak); }, 0.0, L, 1e-13);
  return peak + std::log(2.0 * rest);
}

double log_modulus_squared(double x, double t) { return 2.0 * std::log(std::abs(explicit_solution(x, t))); }

}  // namespace

OdeTrajectory solve_weight_ode(double t_max, double step) {
  require_positive(t_max, "counterexample.t_max");
  require_positive(step, "counterexample.step");
  if (step > kMaxOdeStep) throw Error(ErrorKind::StepTooLarge, "counterexample.step must be <= 1e-3");
  const auto n = static_cast<std::size_t>(std::ceil(t_max / step - 1e-9));
  const double h = t_max / static_cast<double>(n);
  OdeTrajectory traj;
  traj.step = h;
  traj.times.reserve(n + 1);
  State y{1.0, 0.0};
  for (std::size_t k = 0; k <= n; ++k) {
    traj.times.push_back(h * static_cast<double>(k));
    traj.b.push_back(y[0]);
    traj.b_prime.push_back(y[1]);
    traj.a.push_back(1.0 / y[0]);
    if (k == n) break;
    const State k1 = rhs(y);
    const State k2 = rhs(axpy(y, 0.5 * h, k1));
    const State k3 = rhs(axpy(y, 0.5 * h, k2));
    const State k4 = rhs(axpy(y, h, k3));
    y = {y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
         y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
  }
  traj.times.back() = t_max;
  return traj;
}

WeightInterpolant::WeightInterpolant(const OdeTrajectory& traj) : t_max_(traj.t_max()) {
  if (traj.times.size() < 2) throw Error(ErrorKind::TrajectoryTooShort, "trajectory needs two or more nodes");
  auto x = traj.times;
  auto y = traj.b;
  auto dy = traj.b_prime;
  std::vector<double> d2y(traj.b.size());
  for (std::size_t k = 0; k < d2y.size(); ++k) d2y[k] = 32.0 / traj.b[k];
  impl_ = std::make_shared<const Impl>(Impl{{std::move(x), std::move(y), std::move(dy), std::move(d2y)}});
}

WeightJet WeightInterpolant::operator()(double t) const {
  if (t < 0.0 || t > t_max_) throw Error(ErrorKind::TrajectoryTooShort, "time outside the trajectory");
  const double b = impl_->b(t);
  const double b1 = impl_->b.prime(t);
  const double b2 = impl_->b.double_prime(t);
  return {1.0 / b, -b1 / (b * b), -b2 / (b * b) + 2.0 * b1 * b1 / (b * b * b)};
}

double first_integral_residual(const OdeTrajectory& traj) {
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.b.size(); ++k) {
    worst = std::max(worst, std::abs(traj.b_prime[k] * traj.b_prime[k] - 64.0 * std::log(traj.b[k])));
  }
  return worst;
}

WeightJet scaled_weight_jet(const WeightInterpolant& a, double R, double t) {
  require_positive(R, "counterexample.R");
  const double s = R * std::abs(t);
  if (s > a.t_max()) throw Error(ErrorKind::TrajectoryTooShort, "R |t| exceeds the trajectory length");
  const WeightJet j = a(s);
  const double sign = t < 0.0 ? -1.0 : 1.0;
  return {R * j.a, sign * R * R * j.a1, R * R * R * j.a2};
}

double scaled_weight(const WeightInterpolant& a, double R, double t) { return scaled_weight_jet(a, R, t).a; }

double ode_residual(const WeightInterpolant& a, double R, const std::vector<double>& times) {
  double worst = 0.0;
  for (double t : times) {
    const WeightJet j = scaled_weight_jet(a, R, t);
    worst = std::max(worst, std::abs(32.0 * j.a * j.a * j.a + j.a2 - 2.0 * j.a1 * j.a1 / j.a));
  }
  return worst;
}

DivergenceTable divergence_demonstration(const WeightInterpolant& a, double R, const std::vector<double>& half_widths) {
  require_positive(R, "counterexample.R");
  if (half_widths.empty()) throw Error(ErrorKind::ParameterOutOfRange, "counterexample.L list is empty");
  for (std::size_t i = 0; i < half_widths.size(); ++i) {
    require_positive(half_widths[i], "counterexample.L");
    if (i > 0 && !(half_widths[i] > half_widths[i - 1])) {
      throw Error(ErrorKind::ParameterOutOfRange, "counterexample.L must be increasing");
    }
  }
  DivergenceTable table;
  table.R = R;
  table.weight_rate_at_one = scaled_weight(a, R, 1.0);
  table.h0_divergent_regime = 2.0 * R >= 0.5;
  table.regime_note = table.h0_divergent_regime
                          ? "H(0) integrand e^{(2R-1/2)x^2} grows: truncated H(0) is unbounded in L"
                          : "2R < 1/2: H(0) converges, no contradiction exhibited";

  const double rate1 = table.weight_rate_at_one;
  double prev_h0 = std::numeric_limits<double>::quiet_NaN();
  double prev_h1 = std::numeric_limits<double>::quiet_NaN();
  double prev_hm1 = std::numeric_limits<double>::quiet_NaN();
  for (double L : half_widths) {
    DivergenceRow row{R, L, 0.0, 0.0, 0.0, 0.0, false, false};
    row.log_H0 = log_integral([R](double x) { return 2.0 * R * x * x + log_modulus_squared(x, 0.0); }, L);
    row.H0_truncated = std::exp(row.log_H0);
    row.H_minus1 = std::exp(log_integral([rate1](double x) { return 2.0 * rate1 * x * x + log_modulus_squared(x, -1.0); }, L));
    row.H_plus1 = std::exp(log_integral([rate1](double x) { return 2.0 * rate1 * x * x + log_modulus_squared(x, 1.0); }, L));
    if (!std::isnan(prev_h0)) {
      row.h0_converged = std::abs(std::expm1(row.log_H0 - prev_h0)) < kConvergenceTolerance;
      row.h1_converged = std::abs(row.H_plus1 - prev_h1) / row.H_plus1 < kConvergenceTolerance &&
                         std::abs(row.H_minus1 - prev_hm1) / row.H_minus1 < kConvergenceTolerance;
    }
    prev_h0 = row.log_H0;
    prev_h1 = row.H_plus1;
    prev_hm1 = row.H_minus1;
    table.rows.push_back(row);
  }
  return table;
}

std::string to_csv(const DivergenceTable& table) {
  CsvWriter csv({"R", "L", "H0_truncated", "log_H0", "H_minus1", "H_plus1", "h0_converged", "h1_converged"});
  for (const auto& r : table.rows) {
    csv.cell(r.R).cell(r.L).cell(r.H0_truncated).cell(r.log_H0).cell(r.H_minus1).cell(r.H_plus1);
    csv.cell(r.h0_converged).cell(r.h1_converged).end_row();
  }
  return csv.str();
}

}  // namespace hardylab
