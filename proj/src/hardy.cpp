#include "hardylab/hardy.hpp"

#include <algorithm>
#include <cmath>

#include "hardylab/errors.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab {

DecayFit fit_decay(const ComplexField& field) {
  const Grid& g = field.grid();
  double peak = 0.0;
  for (const auto& v : field.values()) peak = std::max(peak, std::abs(v));
  std::vector<double> x2, logs;
  DecayFit fit;
  fit.window_min = g.half_width();
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double x = g.x(i);
    const double m = std::abs(field[i]);
    if (std::abs(x) > 0.9 * g.half_width() || !(m > 1e-12 * peak)) continue;
    x2.push_back(x * x);
    logs.push_back(std::log(m));
    fit.window_min = std::min(fit.window_min, std::abs(x));
    fit.window_max = std::max(fit.window_max, std::abs(x));
  }
  if (x2.size() < 8) throw Error(ErrorKind::InsufficientSamples, "decay fit needs eight or more usable samples");
  const double slope = linear_fit_slope(x2, logs);
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < x2.size(); ++i) {
    mean_x += x2[i];
    mean_y += logs[i];
  }
  mean_x /= static_cast<double>(x2.size());
  mean_y /= static_cast<double>(x2.size());
  fit.rate = -slope;
  fit.log_scale = mean_y - slope * mean_x;
  double ss = 0.0;
  for (std::size_t i = 0; i < x2.size(); ++i) {
    const double r = logs[i] - (fit.log_scale + slope * x2[i]);
    ss += r * r;
  }
  fit.samples = x2.size();
  fit.residual = std::sqrt(ss / static_cast<double>(x2.size()));
  fit.gaussian_tail = fit.residual < kGaussianResidual;
  return fit;
}

HardyProduct hardy_product(const ComplexField& u0, const ComplexField& uT, double T) {
  require_positive(T, "hardy.T");
  HardyProduct out;
  out.initial_fit = fit_decay(u0);
  out.terminal_fit = fit_decay(uT);
  if (!(out.initial_fit.rate > 0.0) || !(out.terminal_fit.rate > 0.0)) {
    throw Error(ErrorKind::BranchOrDecayLoss, "fitted decay rate is not positive");
  }
  out.beta = 1.0 / std::sqrt(out.initial_fit.rate);
  out.alpha = 1.0 / std::sqrt(out.terminal_fit.rate);
  out.normalized = out.alpha * out.beta / (4.0 * T);
  out.forbidden = out.normalized < 1.0;
  return out;
}

double heat_boundary(double c) {
  require_positive(c, "hardy.c");
  return 1.0 / std::sqrt(c / (1.0 + 4.0 * c));
}

HeatThreshold heat_threshold_experiment(const GaussianState& c0, double delta) {
  require_positive(delta, "hardy.δ");
  const GaussianState u1 = evolve_gaussian(c0, 1.0, 0.0, 1.0);
  HeatThreshold out;
  out.delta = delta;
  out.re_c1 = u1.c.real();
  out.boundary = 1.0 / std::sqrt(out.re_c1);
  out.finite = out.re_c1 > 1.0 / (delta * delta);

  auto finite_at = [&](double d) { return gaussian_weighted_norm(u1, 1.0 / (d * d)).has_value(); };
  double lo = 1e-3;
  double hi = 1.0;
  while (!finite_at(hi)) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (finite_at(mid) ? hi : lo) = mid;
  }
  out.scanned_boundary = hi;
  return out;
}

}  // namespace hardylab
