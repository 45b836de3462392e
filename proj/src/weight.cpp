#include "hardylab/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hardylab/errors.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double raw_bump(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s * s));
}

double bump_mass() {
  static const double mass = adaptive_integrate(raw_bump, -1.0, 1.0, 1e-13);
  return mass;
}

// Derivatives of the unnormalized bump in s.
double raw_bump_d2(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  const double psi = std::exp(-1.0 / q);
  return psi * (4.0 * s * s / (q * q * q * q) - 2.0 / (q * q) - 8.0 * s * s / (q * q * q));
}

// Integrates theta_rho(y) g(x - y) over y in (-rho, rho), splitting the panels
// where x - y crosses a kink of g.
double convolve(const std::function<double(double)>& kernel, const std::function<double(double)>& g,
                double x, double rho, std::vector<double> kinks) {
  std::vector<double> cuts{-rho, rho};
  for (double k : kinks) {
    const double y = x - k;
    if (y > -rho && y < rho) cuts.push_back(y);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] <= 0.0) continue;
    total += gauss_legendre([&](double y) { return kernel(y) * g(x - y); }, cuts[i], cuts[i + 1], 6);
  }
  return total;
}

double phi_a(double x, double a) {
  const double r = std::abs(x);
  if (r < 1.0) return x * x;
  return (2.0 * std::pow(r, 2.0 - a) - a) / (2.0 - a);
}

double phi_a_d2(double x, double a) {
  const double r = std::abs(x);
  if (r < 1.0) return 2.0;
  return 2.0 * (1.0 - a) * std::pow(r, -a);
}

}  // namespace

std::string profile_name(const WeightProfile& profile) {
  return std::visit(overloaded{
                        [](const StaticGaussian&) { return std::string("StaticGaussian"); },
                        [](const LemmaOneRate&) { return std::string("LemmaOneRate"); },
                        [](const TimeInterpolated&) { return std::string("TimeInterpolated"); },
                        [](const MovingCarleman&) { return std::string("MovingCarleman"); },
                        [](const LinearExponential&) { return std::string("LinearExponential"); },
                        [](const TruncatedGaussian&) { return std::string("TruncatedGaussian"); },
                        [](const RegularizedConvex&) { return std::string("RegularizedConvex"); },
                    },
                    profile);
}

void validate(const WeightProfile& profile) {
  std::visit(overloaded{
                 [](const StaticGaussian& w) {
                   if (!(w.gamma >= 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "weight.γ");
                 },
                 [](const LemmaOneRate& w) {
                   require_positive(w.gamma, "weight.γ");
                   require_positive(w.A, "weight.A");
                   if (!std::isfinite(w.B)) throw Error(ErrorKind::ParameterOutOfRange, "weight.B");
                 },
                 [](const TimeInterpolated& w) {
                   require_positive(w.alpha, "weight.α");
                   require_positive(w.beta, "weight.β");
                 },
                 [](const MovingCarleman& w) {
                   require_positive(w.mu, "weight.μ");
                   require_positive(w.R, "weight.R");
                   require_positive(w.epsilon, "weight.ε");
                 },
                 [](const LinearExponential& w) {
                   if (!std::isfinite(w.lambda)) throw Error(ErrorKind::ParameterOutOfRange, "weight.λ");
                 },
                 [](const TruncatedGaussian& w) {
                   require_positive(w.gamma, "weight.γ");
                   require_positive(w.truncation_radius, "weight.truncation_radius");
                   require_positive(w.mollification_radius, "weight.ρ");
                 },
                 [](const RegularizedConvex& w) {
                   require_positive(w.gamma, "weight.γ");
                   if (!(w.a_exponent > 0.0 && w.a_exponent < 1.0)) {
                     throw Error(ErrorKind::ParameterOutOfRange, "weight.a");
                   }
                   if (!(w.mollification_radius > 0.0 && w.mollification_radius < 1.0)) {
                     throw Error(ErrorKind::ParameterOutOfRange, "weight.ρ");
                   }
                 },
             },
             profile);
}

double evaluate_phase(const WeightProfile& profile, double x, double t) {
  validate(profile);
  return std::visit(
      overloaded{
          [&](const StaticGaussian& w) { return w.gamma * x * x; },
          [&](const LemmaOneRate& w) {
            if (t < 0.0) throw Error(ErrorKind::ParameterOutOfRange, "weight.t must be >= 0");
            const double rate = w.gamma * w.A / (w.A + 4.0 * w.gamma * (w.A * w.A + w.B * w.B) * t);
            return rate * x * x;
          },
          [&](const TimeInterpolated& w) {
            if (t < 0.0 || t > 1.0) throw Error(ErrorKind::ParameterOutOfRange, "weight.t must lie in [0,1]");
            const double d = w.alpha * t + (1.0 - t) * w.beta;
            return x * x / (d * d);
          },
          [&](const MovingCarleman& w) {
            const double s = t * (1.0 - t);
            const double shifted = x + w.R * s;
            double phase = w.mu * shifted * shifted - (1.0 + w.epsilon) * w.R * w.R * s / (16.0 * w.mu);
            if (w.op == CarlemanOperator::Parabolic) phase += w.R * w.R * s * (1.0 - 2.0 * t) / 6.0;
            return phase;
          },
          [&](const LinearExponential& w) { return w.lambda * x; },
          [&](const TruncatedGaussian& w) {
            return w.gamma * mollified_truncated_square(x, w.truncation_radius, w.mollification_radius);
          },
          [&](const RegularizedConvex& w) {
            return w.gamma * mollified_convex_phase(x, w.a_exponent, w.mollification_radius);
          },
      },
      profile);
}

WeightedNormReport weighted_l2_norm(const ComplexField& field, const WeightProfile& profile, double t,
                                    bool strict, double noise_floor) {
  validate(profile);
  const Grid& g = field.grid();
  const std::size_t n = field.size();
  double max_mod = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_mod = std::max(max_mod, std::abs(field[i]));
  WeightedNormReport report;
  if (max_mod == 0.0) return report;  // zero field
  const double floor = noise_floor * max_mod;
  std::vector<double> log_integrand(n, -std::numeric_limits<double>::infinity());
  double peak = -std::numeric_limits<double>::infinity();
  std::size_t first = n;
  std::size_t last = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double mod = std::abs(field[i]);
    if (mod == 0.0 || mod < floor) continue;
    first = std::min(first, i);
    last = i;
    log_integrand[i] = 2.0 * (evaluate_phase(profile, g.x(i), t) + std::log(mod));
    peak = std::max(peak, log_integrand[i]);
  }
  double sum = 0.0;
  for (double l : log_integrand) sum += std::exp(l - peak);
  const double log_value = 0.5 * (peak + std::log(sum * g.spacing()));
  report.value = std::exp(log_value);
  // Outermost resolved samples; the box boundary when the field fills it.
  const double edge = std::max(log_integrand[first], log_integrand[last]);
  report.tail_ratio = std::exp(edge - peak);
  report.converged = report.tail_ratio < kTailThreshold && std::isfinite(report.value);
  if (strict && !report.converged) {
    throw Error(ErrorKind::WeightedNormDivergent,
                profile_name(profile) + " weighted norm has tail ratio " + std::to_string(report.tail_ratio));
  }
  return report;
}

ComplexField apply_weight(const ComplexField& field, const WeightProfile& profile, double t) {
  validate(profile);
  const Grid& g = field.grid();
  std::vector<cplx> v(field.values().begin(), field.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == cplx(0.0)) continue;
    const double mod = std::abs(v[i]);
    const double log_mod = evaluate_phase(profile, g.x(i), t) + std::log(mod);
    if (log_mod > 700.0) {
      throw Error(ErrorKind::WeightedNormDivergent, "weighted field overflows at x=" + std::to_string(g.x(i)));
    }
    v[i] = std::exp(log_mod) * (v[i] / mod);
  }
  return ComplexField(g, std::move(v));
}

double gaussian_average_identity_check(double gamma, const std::vector<double>& x_samples) {
  require_positive(gamma, "γ");
  const double root = std::sqrt(gamma);
  double worst = 0.0;
  for (double x : x_samples) {
    // Peak of the integrand sits at lambda = 2 sqrt(gamma) x; integrate the
    // shifted form so the quadrature sees an O(1) integrand.
    const double centre = 2.0 * root * x;
    const double log_scale = 2.0 * gamma * x * x;
    auto integrand = [&](double l) {
      return std::exp(2.0 * root * l * x - 0.5 * l * l - log_scale);
    };
    const double lhs = adaptive_integrate(integrand, centre - 40.0, centre + 40.0, 1e-14);
    const double rhs = std::sqrt(2.0 * std::numbers::pi);
    worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  return worst;
}

double mollifier_kernel(double s) { return raw_bump(s) / bump_mass(); }

double mollifier_second_moment() {
  static const double moment =
      adaptive_integrate([](double s) { return s * s * raw_bump(s); }, -1.0, 1.0, 1e-13) / bump_mass();
  return moment;
}

double mollified_truncated_square(double x, double truncation_radius, double rho) {
  require_positive(truncation_radius, "weight.truncation_radius");
  require_positive(rho, "weight.ρ");
  const double r2 = truncation_radius * truncation_radius;
  if (std::abs(x) >= truncation_radius + rho) return r2;
  auto kernel = [rho](double y) { return mollifier_kernel(y / rho) / rho; };
  auto g = [r2](double z) { return std::min(z * z, r2); };
  return convolve(kernel, g, x, rho, {-truncation_radius, truncation_radius});
}

double mollified_convex_phase(double x, double a_exponent, double rho) {
  auto kernel = [rho](double y) { return mollifier_kernel(y / rho) / rho; };
  auto g = [a_exponent](double z) { return phi_a(z, a_exponent); };
  return convolve(kernel, g, x, rho, {-1.0, 1.0});
}

double mollified_convex_bilaplacian(double x, double a_exponent, double rho) {
  const double mass = bump_mass();
  // theta_rho''(y) = theta''(y/rho) / rho^3
  auto kernel = [rho, mass](double y) { return raw_bump_d2(y / rho) / (mass * rho * rho * rho); };
  auto g = [a_exponent](double z) { return phi_a_d2(z, a_exponent); };
  return convolve(kernel, g, x, rho, {-1.0, 1.0});
}

double mollified_bilaplacian_bound(double a_exponent, double rho) {
  if (!(a_exponent > 0.0 && a_exponent < 1.0)) throw Error(ErrorKind::ParameterOutOfRange, "a");
  if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorKind::ParameterOutOfRange, "ρ");
  constexpr int kSamples = 4001;
  double sup = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = 4.0 * i / (kSamples - 1);
    sup = std::max(sup, std::abs(mollified_convex_bilaplacian(x, a_exponent, rho)));
  }
  return sup;
}

}  // namespace hardylab
