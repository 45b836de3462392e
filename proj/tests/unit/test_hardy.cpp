#include "doctest.h"

#include <cmath>

#include "hardylab/analytic.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/hardy.hpp"

using namespace hardylab;

namespace {

const Grid kGrid(20.0, 1024);

}  // namespace

TEST_CASE("decay fits") {
  const auto fit = fit_decay(ComplexField::sample(kGrid, [](double x) { return std::exp(-x * x); }));
  CHECK(fit.rate == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fit.residual < 1e-8);
  CHECK(fit.gaussian_tail);

  const auto wide = fit_decay(ComplexField::sample(kGrid, [](double x) { return 3.0 * std::exp(-x * x / 4); }));
  CHECK(wide.rate == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(wide.log_scale == doctest::Approx(std::log(3.0)).epsilon(1e-8));

  const auto lorentz = fit_decay(ComplexField::sample(kGrid, [](double x) { return 1.0 / (1.0 + x * x); }));
  CHECK_FALSE(lorentz.gaussian_tail);
  CHECK(lorentz.residual > 1e-2);

  CHECK_THROWS_AS(fit_decay(ComplexField::zeros(kGrid)), Error);
}

TEST_CASE("extremal pair reaches equality") {
  const auto pair = hardy_extremal_pair(2.0, 1.0);
  const Grid g(30.0, 2048);
  const auto p = hardy_product(pair.initial.sample(g), pair.terminal.sample(g), 1.0);
  CHECK(p.normalized == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(p.beta == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(p.alpha == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("free evolution product") {
  const auto u0 = GaussianState{1.0};
  const auto uT = evolve_gaussian(u0, 0.0, 1.0, 1.0);
  const Grid g(30.0, 2048);
  const auto p = hardy_product(u0.sample(g), uT.sample(g), 1.0);
  CHECK(p.normalized == doctest::Approx(std::sqrt(17.0) / 4.0).epsilon(1e-6));
  CHECK_FALSE(p.forbidden);

  const auto w0 = GaussianState{1.0 / 8.0};
  const auto wT = evolve_gaussian(w0, 0.0, 1.0, 1.0);
  const auto q = hardy_product(w0.sample(g), wT.sample(g), 1.0);
  CHECK(q.normalized > p.normalized);
}

TEST_CASE("heat thresholds") {
  CHECK(heat_boundary(1.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  CHECK(heat_boundary(0.25) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(heat_boundary(1e9) == doctest::Approx(2.0).epsilon(1e-3));

  const auto inside = heat_threshold_experiment(GaussianState{1.0}, 2.3);
  CHECK(inside.re_c1 == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(inside.finite);
  CHECK(inside.scanned_boundary == doctest::Approx(std::sqrt(5.0)).epsilon(1e-6));
  CHECK_FALSE(heat_threshold_experiment(GaussianState{1.0}, 2.2).finite);
  CHECK(heat_threshold_experiment(GaussianState{0.25}, 3.0).boundary == doctest::Approx(2.0 * std::sqrt(2.0)));
}
