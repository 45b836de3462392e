#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hardylab/analytic.hpp"
#include "hardylab/convexity.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/propagator.hpp"
#include "hardylab/quadrature.hpp"

using namespace hardylab;
using std::numbers::pi;

namespace {

std::vector<double> uniform_times(double t0, double t1, std::size_t n) {
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(n);
  return t;
}

SpaceTimeField gaussian_run(const Grid& g, double A, double B, const std::vector<double>& times) {
  std::vector<ComplexField> slices;
  for (const auto& s : evolve_gaussian_path(GaussianState{1.0}, A, B, times)) slices.push_back(s.sample(g));
  return SpaceTimeField(g, times, std::move(slices));
}

double closed_form_H(double t) {
  const double w = 1.0 + 16.0 * t * t;
  return std::sqrt(pi / (2.0 / w - 0.5)) / std::sqrt(w);
}

}  // namespace

TEST_CASE("trace of the free gaussian") {
  const Grid g(20.0, 1024);
  const auto u = gaussian_run(g, 0.0, 1.0, uniform_times(0.0, 0.4, 40));
  const auto trace = build_trace(u, StaticGaussian{0.25}, FlowCoefficients{0.0, 1.0});
  CHECK(trace.H[0] == doctest::Approx(std::sqrt(2 * pi / 3)).epsilon(1e-10));
  CHECK(trace.H[0] == doctest::Approx(1.44720).epsilon(1e-5));
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    CHECK(trace.H[k] == doctest::Approx(closed_form_H(trace.times[k])).epsilon(1e-6));
    CHECK(trace.N[k] * trace.H[k] == doctest::Approx(trace.D[k]).epsilon(1e-10));
  }
  const auto report = log_convexity_check(trace, 0.0);
  CHECK(report.min_second_diff >= -1e-7);
  CHECK(report.worst_interpolation_margin >= -1e-6);
}

TEST_CASE("trace beyond the convergence window throws") {
  const Grid g(20.0, 1024);
  const auto u = gaussian_run(g, 0.0, 1.0, uniform_times(0.0, 0.5, 10));
  CHECK_THROWS_AS(build_trace(u, StaticGaussian{0.25}), Error);
}

TEST_CASE("static field has a flat trace") {
  const Grid g(20.0, 256);
  const auto f = GaussianState{1.0}.sample(g);
  const SpaceTimeField u(g, uniform_times(0.0, 1.0, 10), std::vector<ComplexField>(11, f));
  const auto trace = build_trace(u, StaticGaussian{0.25});
  for (double d : trace.second_diff_logH) CHECK(std::abs(d) < 1e-14);
}

TEST_CASE("heat flow is dissipative") {
  const Grid g(20.0, 512);
  const auto u = gaussian_run(g, 1.0, 0.0, uniform_times(0.0, 1.0, 20));
  const auto trace = build_trace(u, StaticGaussian{0.0});
  for (std::size_t k = 1; k < trace.H.size(); ++k) CHECK(trace.H[k] < trace.H[k - 1]);
}

TEST_CASE("synthetic traces") {
  const auto times = uniform_times(0.0, 1.0, 100);
  const double dt = 0.01;
  std::vector<double> up;
  std::vector<double> down;
  for (double t : times) {
    up.push_back(std::exp(t * t));
    down.push_back(std::exp(-t * t));
  }
  const auto convex = log_convexity_check(trace_from_values(times, up), 0.0);
  CHECK(convex.min_second_diff == doctest::Approx(2 * dt * dt).epsilon(1e-8));
  CHECK(convex.worst_violation > 0.0);
  const auto concave = log_convexity_check(trace_from_values(times, down), 0.0);
  CHECK(concave.worst_violation == doctest::Approx(-2.0).epsilon(1e-8));
  CHECK(concave.worst_interpolation_margin < 0.0);
  CHECK_THROWS_AS(trace_from_values({0.0, 0.1, 0.3, 0.4}, {1, 1, 1, 1}), Error);
}

TEST_CASE("commutator form on the canonical gaussian") {
  const Grid g(20.0, 1024);
  const auto f = GaussianState{1.0}.sample(g);
  const auto c = commutator_form(f, 1.0, 1.0, 0.0);
  CHECK(c.value_of_form == doctest::Approx(16.0 * std::sqrt(pi / 2)).epsilon(1e-10));
  CHECK(c.value_of_form == doctest::Approx(20.0531).epsilon(1e-5));
  CHECK(c.direct_value == doctest::Approx(c.value_of_form).epsilon(1e-6));

  const auto zero = commutator_form(ComplexField::zeros(g), 1.0, 1.0, 0.0);
  CHECK(zero.value_of_form == 0.0);
  CHECK(zero.direct_value == 0.0);

  const auto doubled = commutator_form(cplx(2.0) * f, 1.0, 1.0, 0.0);
  CHECK(doubled.value_of_form == doctest::Approx(4.0 * c.value_of_form).epsilon(1e-14));
}

TEST_CASE("commutator form with complex coefficients") {
  const Grid g(20.0, 1024);
  const auto f = ComplexField::sample(g, [](double x) { return cplx(1.0, 0.5 * x) * std::exp(-0.7 * x * x + cplx(0, 0.3 * x)); });
  const auto c = commutator_form(f, 0.3, 0.7, -1.2);
  const double sum = 0.3 * (0.49 + 1.44) * (8.0 * c.gradient_part + 32.0 * 0.09 * c.moment_part);
  CHECK(c.value_of_form == doctest::Approx(sum).epsilon(1e-10));
  CHECK(c.direct_value == doctest::Approx(c.value_of_form).epsilon(1e-6));
}

TEST_CASE("hermite lower bound") {
  const Grid g(20.0, 1024);
  const auto ground = ComplexField::sample(g, [](double x) { return std::exp(-x * x); });
  CHECK(std::abs(hermite_lower_bound_check(ground, 1.0).margin) < 1e-9);
  const auto excited = ComplexField::sample(g, [](double x) { return x * std::exp(-x * x); });
  const auto e = hermite_lower_bound_check(excited, 1.0);
  // First excited state: lhs = 3 rhs.
  CHECK(e.margin > 0.0);
  CHECK(e.lhs == doctest::Approx(3.0 * e.rhs).epsilon(1e-10));
  CHECK(hermite_lower_bound_check(ComplexField::zeros(g), 1.0).margin == 0.0);
}

TEST_CASE("gradient estimate") {
  // At t = 0.4 the weighted field only decays like e^{-0.031 x^2}.
  const auto times = uniform_times(0.0, 0.4, 40);
  const auto coarse = gradient_estimate_check(gaussian_run(Grid(40.0, 1024), 0.0, 1.0, times), 0.25, 0.0);
  const auto fine = gradient_estimate_check(gaussian_run(Grid(40.0, 2048), 0.0, 1.0, times), 0.25, 0.0);
  CHECK(std::isfinite(coarse.ratio));
  CHECK(coarse.ratio == doctest::Approx(fine.ratio).epsilon(0.01));

  const Grid g(20.0, 512);
  const SpaceTimeField zero(g, times, std::vector<ComplexField>(times.size(), ComplexField::zeros(g)));
  CHECK(gradient_estimate_check(zero, 0.25, 0.0).lhs == 0.0);
}

TEST_CASE("gradient estimate on a static gaussian") {
  const Grid g(20.0, 1024);
  const auto times = uniform_times(0.0, 1.0, 100);
  const SpaceTimeField u(g, times, std::vector<ComplexField>(times.size(), GaussianState{1.0}.sample(g)));
  const auto r = gradient_estimate_check(u, 0.25, 0.0);
  auto integral = [](auto f) { return 2.0 * adaptive_integrate(f, 0.0, 30.0); };
  const double grad = integral([](double x) { return 4 * x * x * std::exp(-1.5 * x * x); });
  const double moment = integral([](double x) { return x * x * std::exp(-1.5 * x * x); });
  const double mass = integral([](double x) { return std::exp(-1.5 * x * x); });
  const double lhs = std::sqrt(1.0 / 6.0) * (std::sqrt(grad) + std::sqrt(moment));
  CHECK(r.lhs == doctest::Approx(lhs).epsilon(1e-8));
  CHECK(r.rhs == doctest::Approx(std::sqrt(mass)).epsilon(1e-8));
  CHECK(r.ratio == doctest::Approx(lhs / std::sqrt(mass)).epsilon(1e-8));
}

TEST_CASE("second derivative identity") {
  const Grid g(40.0, 2048);
  const auto u = gaussian_run(g, 0.0, 1.0, uniform_times(0.0, 0.4, 400));
  CHECK(second_derivative_identity_check(u, 0.25, 0.0, 1.0).residual < 1e-4);

  const SpaceTimeField zero(g, uniform_times(0.0, 0.1, 10),
                            std::vector<ComplexField>(11, ComplexField::zeros(g)));
  CHECK(second_derivative_identity_check(zero, 0.25, 0.0, 1.0).residual == 0.0);

  const auto unweighted = second_derivative_identity_check(gaussian_run(g, 0.0, 1.0, uniform_times(0.0, 0.4, 400)), 0.0, 0.0, 1.0);
  for (std::size_t k = 0; k < unweighted.lhs.size(); ++k) {
    CHECK(std::abs(unweighted.lhs[k]) < 1e-8);
    CHECK(std::abs(unweighted.rhs[k]) < 1e-8);
  }
}

TEST_CASE("trace csv") {
  const auto trace = trace_from_values(uniform_times(0.0, 1.0, 4), {1, 2, 3, 4, 5});
  const auto csv = to_csv(trace);
  CHECK(csv.rfind("t,H,logH,D,N,d2logH\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}
