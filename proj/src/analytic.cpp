#include "hardylab/analytic.hpp"

#include <cmath>
#include <numbers>

#include "hardylab/errors.hpp"

namespace hardylab {

namespace {

constexpr cplx kI{0.0, 1.0};

GaussianState checked(GaussianState s) {
  if (!(s.c.real() > 0.0) || !std::isfinite(s.c.real()) || !std::isfinite(s.c.imag())) {
    throw Error(ErrorKind::BranchOrDecayLoss, "evolved Gaussian lost decay (Re c <= 0)");
  }
  return s;
}

}  // namespace

ComplexField GaussianState::sample(const Grid& grid) const {
  return ComplexField::sample(grid, [this](double x) { return (*this)(x); });
}

GaussianState evolve_gaussian(const GaussianState& state, double A, double B, double t) {
  if (A < 0.0) throw Error(ErrorKind::ParameterOutOfRange, "A must be >= 0");
  const cplx w = 1.0 + 4.0 * cplx(A, B) * state.c * t;
  return checked({state.c / w, state.amplitude / std::sqrt(w)});
}

std::vector<GaussianState> evolve_gaussian_path(const GaussianState& state, double A, double B,
                                                const std::vector<double>& times) {
  std::vector<GaussianState> path;
  path.reserve(times.size());
  cplx previous_root = 1.0;
  for (double t : times) {
    const cplx w = 1.0 + 4.0 * cplx(A, B) * state.c * t;
    cplx root = std::sqrt(w);
    if (std::abs(root - previous_root) > std::abs(root + previous_root)) root = -root;
    previous_root = root;
    path.push_back(checked({state.c / w, state.amplitude / root}));
  }
  return path;
}

std::optional<double> gaussian_weighted_norm(const GaussianState& state, double gamma) {
  const double re = state.c.real();
  if (!(re > gamma)) return std::nullopt;
  return std::abs(state.amplitude) * std::pow(std::numbers::pi / (2.0 * re - 2.0 * gamma), 0.25);
}

HardyExtremalPair hardy_extremal_pair(double beta, double T) {
  require_positive(beta, "β");
  require_positive(T, "T");
  HardyExtremalPair pair;
  pair.initial = {cplx(1.0 / (beta * beta), 1.0 / (4.0 * T)), 1.0};
  pair.terminal = evolve_gaussian(pair.initial, 0.0, 1.0, T);
  pair.terminal_rate = pair.terminal.c.real();
  pair.alpha = 1.0 / std::sqrt(pair.terminal_rate);
  pair.predicted_alpha = 4.0 * T / beta;
  return pair;
}

cplx explicit_solution(double x, double t) {
  const cplx s = cplx(t, -1.0);
  return std::exp(kI * x * x / (4.0 * s)) / std::sqrt(s);
}

cplx explicit_solution_dt(double x, double t) {
  const cplx s = cplx(t, -1.0);
  return explicit_solution(x, t) * (-0.5 / s - kI * x * x / (4.0 * s * s));
}

}  // namespace hardylab
