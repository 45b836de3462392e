#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hardylab/analytic.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/weight.hpp"

using namespace hardylab;
using std::numbers::pi;

TEST_CASE("evolution at t = 0 is the identity") {
  const GaussianState s{cplx(1.0, 0.3), cplx(2.0, -1.0)};
  const auto e = evolve_gaussian(s, 1.0, 2.0, 0.0);
  CHECK(e.c == s.c);
  CHECK(e.amplitude == s.amplitude);
}

TEST_CASE("heat flow rate") {
  const auto e = evolve_gaussian(GaussianState{1.0}, 1.0, 0.0, 1.0);
  CHECK(e.c.real() == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(std::abs(e.c.imag()) < 1e-15);
}

TEST_CASE("schrodinger flow is unitary") {
  const GaussianState s{1.0};
  const double n0 = *gaussian_weighted_norm(s, 0.0);
  for (double t = 0.1; t <= 1.0; t += 0.1) {
    CHECK(*gaussian_weighted_norm(evolve_gaussian(s, 0.0, 1.0, t), 0.0) == doctest::Approx(n0).epsilon(1e-13));
  }
}

TEST_CASE("backward heat flow loses decay") {
  CHECK_THROWS_AS(evolve_gaussian(GaussianState{1.0}, 1.0, 0.0, -0.5), Error);
}

TEST_CASE("closed-form weighted norms") {
  const GaussianState s{1.0};
  CHECK(*gaussian_weighted_norm(s, 0.25) == doctest::Approx(std::pow(2 * pi / 3, 0.25)).epsilon(1e-14));
  CHECK(*gaussian_weighted_norm(s, 0.25) == doctest::Approx(1.20301).epsilon(1e-5));
  CHECK_FALSE(gaussian_weighted_norm(s, 1.0).has_value());
  CHECK_FALSE(gaussian_weighted_norm(s, 3.0).has_value());
  const GaussianState t{cplx(0.5, 2.0), 3.0};
  CHECK(*gaussian_weighted_norm(t, 0.0) == doctest::Approx(std::pow(pi / 1.0, 0.25) * 3.0).epsilon(1e-14));
}

TEST_CASE("closed form agrees with grid quadrature") {
  const Grid g(20.0, 1024);
  const GaussianState s{cplx(0.7, 0.4), cplx(0.5, 0.5)};
  const auto r = weighted_l2_norm(s.sample(g), StaticGaussian{0.2}, 0.0, true);
  CHECK(r.value == doctest::Approx(*gaussian_weighted_norm(s, 0.2)).epsilon(1e-12));
}

TEST_CASE("hardy extremal pair") {
  const auto p = hardy_extremal_pair(2.0, 1.0);
  CHECK(p.alpha == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(p.predicted_alpha == doctest::Approx(2.0));
  CHECK(p.terminal_rate == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(p.terminal.c.real() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(hardy_extremal_pair(1.0, 1.0).alpha == doctest::Approx(4.0).epsilon(1e-12));

  const double threshold = 1.0 / (p.alpha * p.alpha);
  CHECK_FALSE(gaussian_weighted_norm(p.terminal, threshold * 1.01).has_value());
  CHECK(gaussian_weighted_norm(p.terminal, threshold * 0.99).has_value());
}

TEST_CASE("explicit free solution") {
  for (double x : {0.0, 0.7, -2.5, 4.0}) {
    CHECK(std::norm(explicit_solution(x, 0.0)) == doctest::Approx(std::exp(-x * x / 2)).epsilon(1e-14));
  }
  const Grid g(30.0, 1024);
  for (double t : {-1.0, 0.0, 0.5, 1.0}) {
    const auto u = ComplexField::sample(g, [t](double x) { return explicit_solution(x, t); });
    CHECK(l2_norm(u) * l2_norm(u) == doctest::Approx(std::sqrt(2 * pi)).epsilon(1e-10));
    const auto lap = spectral_laplacian(u);
    const auto dt = ComplexField::sample(g, [t](double x) { return explicit_solution_dt(x, t); });
    CHECK(l2_norm(dt - cplx(0, 1) * lap) < 1e-8);
  }
}

TEST_CASE("path evolution keeps the amplitude branch continuous") {
  std::vector<double> times;
  for (int k = 0; k <= 200; ++k) times.push_back(0.05 * k);
  const auto path = evolve_gaussian_path(GaussianState{1.0}, 0.0, 1.0, times);
  for (std::size_t k = 1; k < path.size(); ++k) {
    CHECK(std::abs(path[k].amplitude - path[k - 1].amplitude) < 0.2);
  }
}
