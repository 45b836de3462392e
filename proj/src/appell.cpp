#include "hardylab/appell.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>

// The Boost 1.74 interpolator headers call isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/makima.hpp>

#include "hardylab/errors.hpp"
#include "hardylab/weight.hpp"

namespace hardylab {

namespace {

using Cubic = boost::math::interpolators::makima<std::vector<double>>;

// Per-grid-point shape-preserving cubic in time over a subset of slices.
class TemporalInterpolator {
 public:
  TemporalInterpolator(const SpaceTimeField& u, const std::vector<std::size_t>& indices) : grid_(u.grid()) {
    const std::size_t n = grid_.points();
    re_.reserve(n);
    im_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> t, yr, yi;
      t.reserve(indices.size());
      yr.reserve(indices.size());
      yi.reserve(indices.size());
      for (std::size_t k : indices) {
        t.push_back(u.times()[k]);
        yr.push_back(u.slice(k)[i].real());
        yi.push_back(u.slice(k)[i].imag());
      }
      auto t2 = t;
      re_.emplace_back(std::move(t), std::move(yr));
      im_.emplace_back(std::move(t2), std::move(yi));
    }
  }

  ComplexField operator()(double s) const {
    std::vector<cplx> v(grid_.points());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx(re_[i](s), im_[i](s));
    return ComplexField(grid_, std::move(v));
  }

 private:
  Grid grid_;
  std::vector<Cubic> re_;
  std::vector<Cubic> im_;
};

double max_abs(const ComplexField& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

// ||e^{c x^2} f|| over |x| <= window for any real c, accumulated in log space.
double gaussian_weighted_norm_log(const ComplexField& f, double c, double window) {
  const Grid& g = f.grid();
  std::vector<double> logs;
  logs.reserve(f.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double m = std::abs(f[i]);
    if (m == 0.0 || std::abs(g.x(i)) > window) continue;
    logs.push_back(2.0 * (c * g.x(i) * g.x(i) + std::log(m)));
    top = std::max(top, logs.back());
  }
  if (logs.empty()) return 0.0;
  double sum = 0.0;
  for (double l : logs) sum += std::exp(l - top);
  return std::exp(0.5 * (top + std::log(sum * g.spacing())));
}

// Below this fraction of the peak, resampled values are round-off.
constexpr double kSignalFloor = 1e-12;

// Largest |x| with |f(x)| >= floor * max |f|.
double signal_extent(const ComplexField& f, double floor) {
  const double cut = floor * max_abs(f);
  const Grid& g = f.grid();
  double X = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::abs(f[i]) >= cut) X = std::max(X, std::abs(g.x(i)));
  }
  return X;
}

// max over the two edges |x| ~ X of e^{2 c x^2} |f|^2 dx.
double edge_weighted_density(const ComplexField& f, double c, double X) {
  const Grid& g = f.grid();
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = std::abs(g.x(i));
    if (x > X || x < X - 1.5 * g.spacing()) continue;
    const double m = std::abs(f[i]);
    if (m == 0.0) continue;
    worst = std::max(worst, std::exp(2.0 * (c * x * x + std::log(m))) * g.spacing());
  }
  return worst;
}

double denominator(const AppellParams& p, double t) { return p.alpha * (1.0 - t) + p.beta * t; }

// Halving estimate: interpolate from even-indexed slices at the odd ones. On
// oscillatory slices the cubic converges at second order, so the full-rate
// error is about a quarter of that.
double estimate_interpolation_error(const SpaceTimeField& u) {
  std::vector<std::size_t> coarse;
  for (std::size_t k = 0; k < u.size(); k += 2) coarse.push_back(k);
  if (coarse.back() != u.size() - 1) coarse.push_back(u.size() - 1);
  const TemporalInterpolator interp(u, coarse);
  double scale = 0.0;
  for (const auto& slice : u.slices()) scale = std::max(scale, max_abs(slice));
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < u.size(); k += 2) {
    const auto approx = interp(u.times()[k]);
    worst = std::max(worst, max_abs(approx - u.slice(k)));
  }
  return worst / scale / 4.0;
}

void require_unit_interval(const SpaceTimeField& u) {
  if (u.size() < 8) throw Error(ErrorKind::InvalidField, "appell transform needs eight or more slices");
  if (std::abs(u.times().front()) > 1e-12 || std::abs(u.times().back() - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidField, "appell transform needs slices spanning [0, 1]");
  }
}

using PotentialFn = std::function<cplx(double x, double t)>;

PotentialFn potential_of(const FlowSpec& flow, const Grid& grid) {
  PotentialFn v1;
  if (flow.static_potential) {
    std::vector<cplx> samples(flow.static_potential->begin(), flow.static_potential->end());
    auto interp = std::make_shared<SpectralInterpolator>(ComplexField(grid, std::move(samples)));
    v1 = [interp](double x, double) { return (*interp)(x); };
  }
  auto v2 = flow.time_potential ? flow.time_potential->eval : PotentialFn{};
  if (!v1 && !v2) return {};
  return [v1, v2](double x, double t) {
    cplx v = 0.0;
    if (v1) v += v1(x, t);
    if (v2) v += v2(x, t);
    return v;
  };
}

double pde_residual(const SpaceTimeField& w, cplx z, const std::function<cplx(double x, double t)>& potential) {
  if (w.size() < 5) throw Error(ErrorKind::InvalidField, "residual needs five or more slices");
  if (!w.uniform_in_time()) throw Error(ErrorKind::NonUniformTimeGrid, "residual needs uniform times");
  const double dt = (w.times().back() - w.times().front()) / static_cast<double>(w.size() - 1);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 2; k + 2 < w.size(); ++k) {
    auto dtw = cplx(1.0 / (12.0 * dt)) *
               (w.slice(k - 2) - w.slice(k + 2) + cplx(8.0) * (w.slice(k + 1) - w.slice(k - 1)));
    auto rhs = spectral_laplacian(w.slice(k));
    if (potential) {
      const double t = w.times()[k];
      rhs += multiply(w.slice(k), [&](double x) { return potential(x, t); });
    }
    const auto r = dtw - z * rhs;
    num += std::pow(l2_norm(r), 2);
    den += std::pow(l2_norm(dtw), 2);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num * dt);
}

}  // namespace

void validate(const AppellParams& p) {
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) throw Error(ErrorKind::ParameterOutOfRange, "appell.α");
  if (!(p.beta > 0.0) || !std::isfinite(p.beta)) throw Error(ErrorKind::ParameterOutOfRange, "appell.β");
  if (!(p.A >= 0.0) || !std::isfinite(p.A)) throw Error(ErrorKind::ParameterOutOfRange, "appell.A");
  if (!std::isfinite(p.B)) throw Error(ErrorKind::ParameterOutOfRange, "appell.B");
  if (p.A == 0.0 && p.B == 0.0) throw Error(ErrorKind::ParameterOutOfRange, "appell.A and appell.B both vanish");
}

double s_map(const AppellParams& params, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::ParameterOutOfRange, "appell.t outside [0, 1]");
  return params.beta * t / denominator(params, t);
}

double appell_norm_exponent(const AppellParams& p, double gamma, double s) {
  const double e = p.alpha * s + p.beta * (1.0 - s);
  return gamma * p.alpha * p.beta / (e * e) + (p.alpha - p.beta) * p.A / (4.0 * (p.A * p.A + p.B * p.B) * e);
}

AppellResult appell_transform(const SpaceTimeField& u, const AppellParams& params, std::optional<double> gamma) {
  validate(params);
  require_unit_interval(u);
  if (gamma && !(*gamma >= 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "appell.γ");

  const double interp_error = estimate_interpolation_error(u);
  if (interp_error > kInterpolationTolerance) {
    throw Error(ErrorKind::InterpolationUnderresolved,
                "estimated temporal interpolation error " + std::to_string(interp_error) + " exceeds 1e-6");
  }

  std::vector<std::size_t> all(u.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  const TemporalInterpolator interp(u, all);

  const Grid& g = u.grid();
  const double L = g.half_width();
  const cplx z(params.A, params.B);
  const double root = std::sqrt(params.alpha * params.beta);

  std::vector<double> s_of_t;
  double norm_residual = 0.0;
  std::size_t checked = 0;
  std::vector<ComplexField> slices;
  slices.reserve(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double t = std::clamp(u.times()[k], 0.0, 1.0);
    const double s = std::clamp(s_map(params, t), 0.0, 1.0);
    const double d = denominator(params, t);
    const double sigma = root / d;
    s_of_t.push_back(s);

    const auto us = interp(s);
    if (sigma > 1.0) {
      // Anything below the temporal resampling error is indistinguishable from zero.
      const double floor = std::max(kTailThreshold, interp_error);
      const double peak = max_abs(us);
      for (std::size_t i = 0; i < us.size(); ++i) {
        if (std::abs(g.x(i)) >= L / sigma && std::abs(us[i]) > floor * peak) {
          throw Error(ErrorKind::GridOverflow, "rescaled coordinates leave the region where u is negligible");
        }
      }
    }
    const SpectralInterpolator spatial(us);
    const cplx chirp = (params.alpha - params.beta) / (4.0 * z * d);
    const double amp = std::sqrt(sigma);
    // Past |sigma x| = L the periodic interpolant would wrap; u is negligible
    // there. Under a growing (real part > 0) chirp, values below the resolvable
    // level are zeroed so round-off is not amplified.
    const double resolvable = chirp.real() > 0.0 ? std::max(kSignalFloor, interp_error) * max_abs(us) : 0.0;
    auto out = ComplexField::sample(g, [&](double x) {
      if (std::abs(sigma * x) > L) return cplx(0.0);
      const cplx v = spatial(sigma * x);
      if (std::abs(v) < resolvable) return cplx(0.0);
      return amp * v * std::exp(chirp * x * x);
    });

    if (gamma) {
      // Both sides are compared on the signal region of ut (|ut| above the
      // resampling noise floor) and its image |y| <= sigma X. Slices where the
      // weighted integrand is still large at the edge are skipped.
      const double X = signal_extent(out, kSignalFloor);
      const double lhs = gaussian_weighted_norm_log(out, *gamma, X);
      const double edge = edge_weighted_density(out, *gamma, X);
      if (lhs > 0.0 && std::isfinite(lhs) && edge / (lhs * lhs) < kTailThreshold) {
        ++checked;
        const double c = appell_norm_exponent(params, *gamma, s);
        const double rhs = gaussian_weighted_norm_log(us, c, sigma * X);
        const double gap = std::abs(lhs - rhs);
        norm_residual = std::max(norm_residual, rhs > 0.0 ? gap / rhs : gap);
      }
    }
    slices.push_back(std::move(out));
  }
  return AppellResult{SpaceTimeField(g, u.times(), std::move(slices)), std::move(s_of_t), norm_residual,
                      interp_error, checked};
}

double appell_equation_residual(const SpaceTimeField& u, const AppellParams& params, const FlowSpec& flow) {
  validate(params);
  if (flow.A != params.A || flow.B != params.B) {
    throw Error(ErrorKind::ParameterOutOfRange, "appell.A/B must match the flow coefficients");
  }
  if (flow.source) throw Error(ErrorKind::ParameterOutOfRange, "appell residual does not support sources");
  validate(flow, u.grid());
  const auto transformed = appell_transform(u, params).transformed;
  const auto base = potential_of(flow, u.grid());
  PotentialFn moved;
  if (base) {
    const double root = std::sqrt(params.alpha * params.beta);
    moved = [&params, base, root](double x, double t) {
      const double sigma = root / denominator(params, t);
      return sigma * sigma * base(sigma * x, std::clamp(s_map(params, t), 0.0, 1.0));
    };
  }
  return pde_residual(transformed, cplx(params.A, params.B), moved);
}

double flow_equation_residual(const SpaceTimeField& u, const FlowSpec& flow) {
  if (flow.source) throw Error(ErrorKind::ParameterOutOfRange, "residual does not support sources");
  validate(flow, u.grid());
  return pde_residual(u, cplx(flow.A, flow.B), potential_of(flow, u.grid()));
}

}  // namespace hardylab
