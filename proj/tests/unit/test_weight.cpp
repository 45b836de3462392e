#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hardylab/errors.hpp"
#include "hardylab/quadrature.hpp"
#include "hardylab/weight.hpp"

using namespace hardylab;
using std::numbers::pi;

TEST_CASE("phase values") {
  CHECK(evaluate_phase(StaticGaussian{1.0}, 2.0, 0.7) == doctest::Approx(4.0));
  CHECK(evaluate_phase(LemmaOneRate{1.0, 1.0, 0.0}, 1.0, 1.0) == doctest::Approx(0.2).epsilon(1e-15));
  const MovingCarleman mc{1.0, 4.0, 0.5, CarlemanOperator::Schrodinger};
  CHECK(evaluate_phase(mc, 0.0, 0.5) == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(evaluate_phase(TimeInterpolated{2.0, 3.0}, 1.0, 0.0) == doctest::Approx(1.0 / 9.0));
  CHECK(evaluate_phase(TimeInterpolated{2.0, 3.0}, 1.0, 1.0) == doctest::Approx(1.0 / 4.0));
  CHECK(evaluate_phase(LinearExponential{-2.0}, 3.0, 0.0) == doctest::Approx(-6.0));
}

TEST_CASE("parameter validation names the parameter") {
  try {
    validate(StaticGaussian{-1.0});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParameterOutOfRange);
    CHECK(std::string(e.what()) == "ParameterOutOfRange: weight.γ");
  }
  CHECK_THROWS_AS(validate(RegularizedConvex{1.0, 1.5, 0.5}), Error);
  CHECK_THROWS_AS(validate(MovingCarleman{0.0, 1.0, 0.5}), Error);
}

TEST_CASE("gaussian-type phases are nonnegative") {
  const std::vector<WeightProfile> profiles{StaticGaussian{0.3}, LemmaOneRate{0.5, 1.0, 2.0}, TimeInterpolated{1.0, 2.0},
                                            TruncatedGaussian{1.0, 2.0, 0.5}, RegularizedConvex{1.0, 0.5, 0.5}};
  for (const auto& p : profiles) {
    for (double x = -6.0; x <= 6.0; x += 0.37) {
      for (double t : {0.0, 0.25, 1.0}) {
        const double phase = evaluate_phase(p, x, t);
        CHECK(std::isfinite(phase));
        CHECK(phase >= 0.0);
      }
    }
  }
}

TEST_CASE("truncated gaussian phase is flat beyond R + rho") {
  const TruncatedGaussian w{1.0, 2.0, 0.5};
  const double far = evaluate_phase(w, 2.6, 0.0);
  CHECK(far == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(evaluate_phase(w, 5.0, 0.0) == doctest::Approx(far).epsilon(1e-12));
  CHECK(evaluate_phase(w, -3.3, 0.0) == doctest::Approx(far).epsilon(1e-12));
}

TEST_CASE("regularized convex phase is convex") {
  const RegularizedConvex w{1.0, 0.3, 0.4};
  const double h = 0.01;
  for (double x = -5.0; x <= 5.0; x += 0.05) {
    const double d2 = evaluate_phase(w, x + h, 0) - 2 * evaluate_phase(w, x, 0) + evaluate_phase(w, x - h, 0);
    CHECK(d2 >= -1e-10);
  }
}

TEST_CASE("weighted norm of a gaussian") {
  const Grid g(20.0, 1024);
  const auto u = ComplexField::sample(g, [](double x) { return std::exp(-x * x); });
  const auto r = weighted_l2_norm(u, StaticGaussian{0.25}, 0.0, true);
  CHECK(r.converged);
  CHECK(r.value * r.value == doctest::Approx(std::sqrt(2 * pi / 3)).epsilon(1e-10));
  CHECK(r.value == doctest::Approx(1.20301).epsilon(1e-5));

  CHECK_THROWS_AS(weighted_l2_norm(u, StaticGaussian{2.0}, 0.0, true), Error);
  const auto loose = weighted_l2_norm(u, StaticGaussian{2.0}, 0.0, false);
  CHECK_FALSE(loose.converged);

  const auto zero = weighted_l2_norm(ComplexField::zeros(g), TruncatedGaussian{1.0, 2.0, 0.5}, 0.0, true);
  CHECK(zero.value == 0.0);
  CHECK(zero.converged);
}

TEST_CASE("gaussian average identity") {
  CHECK(gaussian_average_identity_check(0.25, {0.0}) < 1e-10);
  CHECK(gaussian_average_identity_check(0.25, {1.0}) < 1e-8);
  CHECK(gaussian_average_identity_check(1.0, {2.0}) < 1e-8);
}

TEST_CASE("mollifier") {
  const double mass = adaptive_integrate(mollifier_kernel, -1.0, 1.0);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mollifier_kernel(1.0) == 0.0);
  // Inside the unit ball the mollified phase is x^2 + rho^2 * second moment.
  const double rho = 0.05;
  for (double x : {0.0, 0.2, -0.45}) {
    const double v = mollified_convex_phase(x, 0.5, rho);
    CHECK(std::abs(v - x * x) < 2.0 * rho * rho);
    CHECK(v == doctest::Approx(x * x + rho * rho * mollifier_second_moment()).epsilon(1e-10));
  }
}

TEST_CASE("bilaplacian bound scales linearly in a") {
  const double value = mollified_bilaplacian_bound(0.5, 0.5);
  CHECK(std::isfinite(value));
  CHECK(value > 0.0);

  std::vector<double> la;
  std::vector<double> lb;
  for (double a : {0.2, 0.1, 0.05, 0.025, 0.0125}) {
    la.push_back(std::log(a));
    lb.push_back(std::log(mollified_bilaplacian_bound(a, 0.5)));
  }
  CHECK(linear_fit_slope(la, lb) >= 0.9);
}
