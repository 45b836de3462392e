#include "hardylab/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardylab/csv.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab {

namespace {

double squared_norm(const ComplexField& f) {
  const double n = l2_norm(f);
  return n * n;
}

// Tail diagnostic for x^2 |f|^2, the heaviest integrand the quadratic forms use.
void require_moment_tail(const ComplexField& f) {
  const Grid& g = f.grid();
  double peak = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    peak = std::max(peak, (1.0 + g.x(i) * g.x(i)) * std::norm(f[i]));
  }
  if (peak == 0.0) return;
  const double x0 = g.x(0);
  const double xn = g.x(f.size() - 1);
  const double boundary = std::max((1.0 + x0 * x0) * std::norm(f[0]), (1.0 + xn * xn) * std::norm(f[f.size() - 1]));
  if (boundary / peak >= kTailThreshold) {
    throw Error(ErrorKind::WeightedNormDivergent, "x^2|f|^2 moment not tail-converged");
  }
}

ComplexField x_times(const ComplexField& f, double power) {
  return multiply(f, [power](double x) { return cplx(std::pow(x, power)); });
}

// 4 x f' + 2 f
ComplexField transport_part(const ComplexField& f) {
  auto out = 4.0 * multiply(spectral_derivative(f), [](double x) { return cplx(x); });
  out += 2.0 * f;
  return out;
}

// f'' + 4 gamma^2 x^2 f
ComplexField harmonic_part(const ComplexField& f, double gamma) {
  auto out = spectral_laplacian(f);
  out += multiply(f, [gamma](double x) { return cplx(4.0 * gamma * gamma * x * x); });
  return out;
}

std::vector<ComplexField> weighted_slices(const SpaceTimeField& u, double gamma) {
  std::vector<ComplexField> out;
  out.reserve(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    weighted_l2_norm(u.slice(k), StaticGaussian{gamma}, u.times()[k], true);
    out.push_back(apply_weight(u.slice(k), StaticGaussian{gamma}, u.times()[k]));
  }
  return out;
}

// Zeroes samples below floor * max|f|.
ComplexField drop_below(const ComplexField& f, double floor) {
  double peak = 0.0;
  for (const auto& v : f.values()) peak = std::max(peak, std::abs(v));
  std::vector<cplx> v(f.values().begin(), f.values().end());
  for (auto& z : v) {
    if (std::abs(z) < floor * peak) z = 0.0;
  }
  return ComplexField(f.grid(), std::move(v));
}

}  // namespace

double ConvexityTrace::step() const {
  if (times.size() < 2) return 0.0;
  return (times.back() - times.front()) / static_cast<double>(times.size() - 1);
}

ConvexityTrace trace_from_values(std::vector<double> times, std::vector<double> H) {
  if (times.size() != H.size()) throw Error(ErrorKind::InvalidField, "trace times and values differ in length");
  ConvexityTrace trace;
  trace.times = std::move(times);
  trace.H = std::move(H);
  for (double h : trace.H) {
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidField, "H must be positive for a nondegenerate trace");
    trace.logH.push_back(std::log(h));
  }
  if (trace.times.size() >= 3) {
    const double dt = trace.step();
    for (std::size_t k = 1; k < trace.times.size(); ++k) {
      if (std::abs((trace.times[k] - trace.times[k - 1]) - dt) > 1e-9 * dt) {
        throw Error(ErrorKind::NonUniformTimeGrid, "second differences need a uniform time grid");
      }
    }
    for (std::size_t k = 1; k + 1 < trace.times.size(); ++k) {
      trace.second_diff_logH.push_back(trace.logH[k + 1] - 2.0 * trace.logH[k] + trace.logH[k - 1]);
    }
  }
  return trace;
}

ConvexityTrace build_trace(const SpaceTimeField& u, const WeightProfile& profile,
                           std::optional<FlowCoefficients> flow, double noise_floor) {
  std::vector<ComplexField> slices;
  slices.reserve(u.size());
  for (const auto& s : u.slices()) slices.push_back(noise_floor > 0.0 ? drop_below(s, noise_floor) : s);
  std::vector<double> H;
  H.reserve(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    const auto report = weighted_l2_norm(slices[k], profile, u.times()[k], true);
    H.push_back(report.value * report.value);
  }
  ConvexityTrace trace = trace_from_values(u.times(), std::move(H));
  const auto* gaussian = std::get_if<StaticGaussian>(&profile);
  if (flow && gaussian) {
    for (std::size_t k = 0; k < u.size(); ++k) {
      const auto f = apply_weight(slices[k], profile, u.times()[k]);
      const double d = inner_product(apply_symmetric_part(f, gaussian->gamma, flow->A, flow->B), f).real();
      trace.D.push_back(d);
      trace.N.push_back(d / trace.H[k]);
    }
  }
  return trace;
}

LogConvexityReport log_convexity_check(const ConvexityTrace& trace, double slack) {
  LogConvexityReport report{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                            std::numeric_limits<double>::infinity()};
  const double dt = trace.step();
  for (double d2 : trace.second_diff_logH) {
    report.min_second_diff = std::min(report.min_second_diff, d2);
    report.worst_violation = std::min(report.worst_violation, d2 / (dt * dt) + slack);
  }
  if (trace.times.size() >= 2) {
    const double t0 = trace.times.front();
    const double span = trace.times.back() - t0;
    for (std::size_t k = 0; k < trace.times.size(); ++k) {
      const double s = (trace.times[k] - t0) / span;
      const double bound = (1.0 - s) * trace.logH.front() + s * trace.logH.back() + slack;
      report.worst_interpolation_margin = std::min(report.worst_interpolation_margin, bound - trace.logH[k]);
    }
  }
  return report;
}

ComplexField apply_symmetric_part(const ComplexField& f, double gamma, double A, double B) {
  auto out = A * harmonic_part(f, gamma);
  out -= cplx(0.0, B * gamma) * transport_part(f);
  return out;
}

ComplexField apply_antisymmetric_part(const ComplexField& f, double gamma, double A, double B) {
  auto out = cplx(0.0, B) * harmonic_part(f, gamma);
  out -= cplx(A * gamma) * transport_part(f);
  return out;
}

CommutatorForm commutator_form(const ComplexField& f, double gamma, double A, double B) {
  require_positive(gamma, "γ");
  if (A < 0.0) throw Error(ErrorKind::ParameterOutOfRange, "A");
  require_moment_tail(f);
  CommutatorForm form{gamma, A, B};
  form.gradient_part = squared_norm(spectral_derivative(f));
  form.moment_part = squared_norm(x_times(f, 1.0));
  form.value_of_form =
      gamma * (A * A + B * B) * (8.0 * form.gradient_part + 32.0 * gamma * gamma * form.moment_part);
  const auto sf = apply_symmetric_part(f, gamma, A, B);
  const auto af = apply_antisymmetric_part(f, gamma, A, B);
  const auto commutator = apply_symmetric_part(af, gamma, A, B) - apply_antisymmetric_part(sf, gamma, A, B);
  form.direct_value = inner_product(commutator, f).real();
  return form;
}

HermiteBound hermite_lower_bound_check(const ComplexField& f, double gamma) {
  require_positive(gamma, "γ");
  require_moment_tail(f);
  HermiteBound bound;
  bound.lhs = squared_norm(spectral_derivative(f)) + 4.0 * gamma * gamma * squared_norm(x_times(f, 1.0));
  bound.rhs = 2.0 * gamma * squared_norm(f);
  bound.margin = bound.lhs - bound.rhs;
  return bound;
}

GradientEstimate gradient_estimate_check(const SpaceTimeField& u, double gamma, double m1, double source_sup) {
  require_positive(gamma, "γ");
  if (u.size() < 3) throw Error(ErrorKind::InvalidField, "gradient estimate needs three or more slices");
  if (!u.uniform_in_time()) throw Error(ErrorKind::NonUniformTimeGrid, "gradient estimate needs uniform times");
  const auto& times = u.times();
  const double t0 = times.front();
  const double span = times.back() - t0;
  const double ds = 1.0 / static_cast<double>(u.size() - 1);
  std::vector<double> grad(u.size());
  std::vector<double> moment(u.size());
  double sup_norm = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double s = (times[k] - t0) / span;
    const double w = s * (1.0 - s);
    const auto& slice = u.slice(k);
    sup_norm = std::max(sup_norm, weighted_l2_norm(slice, StaticGaussian{gamma}, times[k], true).value);
    // Weight first, then differentiate: e^{gamma x^2} u_x = f' - 2 gamma x f.
    // Differentiating u directly would let the weight amplify round-off.
    const auto f = apply_weight(slice, StaticGaussian{gamma}, times[k]);
    require_moment_tail(f);
    const double g = l2_norm(spectral_derivative(f) - cplx(2.0 * gamma) * x_times(f, 1.0));
    const double m = l2_norm(x_times(f, 1.0));
    grad[k] = w * g * g;
    moment[k] = w * m * m;
  }
  GradientEstimate est;
  est.lhs = std::sqrt(simpson(grad, ds)) + std::sqrt(simpson(moment, ds));
  est.rhs = (1.0 + m1) * sup_norm + source_sup;
  est.ratio = est.rhs > 0.0 ? est.lhs / est.rhs : 0.0;
  return est;
}

SecondDerivativeIdentity second_derivative_identity_check(const SpaceTimeField& u, double gamma, double A,
                                                          double B) {
  if (u.size() < 9) throw Error(ErrorKind::InvalidField, "identity check needs nine or more slices");
  if (!u.uniform_in_time()) throw Error(ErrorKind::NonUniformTimeGrid, "identity check needs uniform times");
  const double dt = (u.times().back() - u.times().front()) / static_cast<double>(u.size() - 1);
  const auto f = weighted_slices(u, gamma);
  const std::size_t n = f.size();

  std::vector<double> H(n);
  for (std::size_t k = 0; k < n; ++k) H[k] = squared_norm(f[k]);

  // Fourth-order centred stencils throughout; dt f lives on 2..n-3.
  std::vector<double> flux(n, 0.0);
  std::vector<double> plus(n, 0.0);
  std::vector<double> minus(n, 0.0);
  for (std::size_t k = 2; k + 2 < n; ++k) {
    auto dtf = cplx(1.0 / (12.0 * dt)) * (f[k - 2] - f[k + 2] + cplx(8.0) * (f[k + 1] - f[k - 1]));
    const auto sf = apply_symmetric_part(f[k], gamma, A, B);
    const auto af = apply_antisymmetric_part(f[k], gamma, A, B);
    const auto skew_residual = dtf - af;
    flux[k] = inner_product(skew_residual - sf, f[k]).real();
    plus[k] = squared_norm(skew_residual + sf);
    minus[k] = squared_norm(skew_residual - sf);
  }

  SecondDerivativeIdentity out;
  for (std::size_t k = 4; k + 4 < n; ++k) {
    const double lhs = (16.0 * (H[k + 1] + H[k - 1]) - (H[k + 2] + H[k - 2]) - 30.0 * H[k]) / (12.0 * dt * dt);
    double commutator = 0.0;
    if (gamma > 0.0 && (A != 0.0 || B != 0.0)) commutator = commutator_form(f[k], gamma, A, B).value_of_form;
    const double dflux = (flux[k - 2] - flux[k + 2] + 8.0 * (flux[k + 1] - flux[k - 1])) / (12.0 * dt);
    const double rhs = 2.0 * dflux + 2.0 * commutator + plus[k] - minus[k];
    out.times.push_back(u.times()[k]);
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs);
    const double diff = std::abs(lhs - rhs);
    out.max_abs_difference = std::max(out.max_abs_difference, diff);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    if (scale > 0.0) out.residual = std::max(out.residual, diff / scale);
  }
  return out;
}

std::string to_csv(const ConvexityTrace& trace) {
  CsvWriter csv({"t", "H", "logH", "D", "N", "d2logH"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    csv.cell(trace.times[k]).cell(trace.H[k]).cell(trace.logH[k]);
    csv.cell(trace.has_operator() ? trace.D[k] : nan).cell(trace.has_operator() ? trace.N[k] : nan);
    const bool interior = k > 0 && k + 1 < trace.times.size() && !trace.second_diff_logH.empty();
    csv.cell(interior ? trace.second_diff_logH[k - 1] : nan);
    csv.end_row();
  }
  return csv.str();
}

}  // namespace hardylab
