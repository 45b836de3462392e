#include "doctest.h"

#include <cmath>

#include "hardylab/analytic.hpp"
#include "hardylab/appell.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/weight.hpp"

using namespace hardylab;

namespace {

std::vector<double> unit_times(std::size_t n) {
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t[k] = static_cast<double>(k) / static_cast<double>(n);
  return t;
}

SpaceTimeField gaussian_run(const Grid& g, double A, double B, std::size_t n) {
  const auto times = unit_times(n);
  std::vector<ComplexField> slices;
  for (const auto& s : evolve_gaussian_path(GaussianState{1.0}, A, B, times)) slices.push_back(s.sample(g));
  return SpaceTimeField(g, times, std::move(slices));
}

const SpaceTimeField& schrodinger_run() {
  static const SpaceTimeField u = gaussian_run(Grid(40.0, 1024), 0.0, 1.0, 1000);
  return u;
}

}  // namespace

TEST_CASE("s map") {
  CHECK(s_map(AppellParams{1.0, 3.0}, 0.5) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(s_map(AppellParams{2.0, 5.0}, 0.0) == 0.0);
  CHECK(s_map(AppellParams{2.0, 5.0}, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double t : {0.1, 0.33, 0.8}) CHECK(s_map(AppellParams{1.7, 1.7}, t) == doctest::Approx(t).epsilon(1e-15));
  double prev = -1.0;
  for (double t = 0.0; t <= 1.0; t += 0.01) {
    const double s = s_map(AppellParams{1.0, 4.0}, t);
    CHECK(s > prev);
    prev = s;
  }
}

TEST_CASE("parameter validation") {
  try {
    validate(AppellParams{-1.0, 1.0});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "ParameterOutOfRange: appell.α");
  }
  CHECK_THROWS_AS(validate(AppellParams{1.0, 1.0, 0.0, 0.0}), Error);
  CHECK_THROWS_AS(validate(AppellParams{1.0, 1.0, -1.0, 1.0}), Error);
}

TEST_CASE("norm exponent at the endpoints") {
  const AppellParams p{1.0, 2.0, 0.0, 1.0};
  // gamma = 1/(alpha beta): 1/beta^2 at s = 0 and 1/alpha^2 at s = 1.
  CHECK(appell_norm_exponent(p, 0.5, 0.0) == doctest::Approx(0.25));
  CHECK(appell_norm_exponent(p, 0.5, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("equal parameters give the identity") {
  const auto& u = schrodinger_run();
  const auto r = appell_transform(u, AppellParams{1.5, 1.5, 0.0, 1.0});
  double worst = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) worst = std::max(worst, l2_norm(r.transformed.slice(k) - u.slice(k)));
  CHECK(worst < 1e-10);
  for (std::size_t k = 0; k < u.size(); ++k) CHECK(r.s_of_t[k] == doctest::Approx(u.times()[k]).epsilon(1e-15));
}

TEST_CASE("schrodinger transform") {
  const auto& u = schrodinger_run();
  const AppellParams p{1.0, 2.0, 0.0, 1.0};
  const auto r = appell_transform(u, p, 1.0 / (p.alpha * p.beta));
  CHECK(r.interpolation_error < kInterpolationTolerance);
  CHECK(r.s_of_t.front() == 0.0);
  CHECK(r.s_of_t.back() == doctest::Approx(1.0));

  for (std::size_t k = 0; k < u.size(); k += 50) {
    const auto exact = evolve_gaussian(GaussianState{1.0}, 0.0, 1.0, r.s_of_t[k]);
    CHECK(l2_norm(r.transformed.slice(k)) == doctest::Approx(*gaussian_weighted_norm(exact, 0.0)).epsilon(1e-6));
  }

  // t = 0 with gamma = 1/(alpha beta).
  const double lhs = weighted_l2_norm(r.transformed.slice(0), StaticGaussian{0.5}, 0.0, true, kRoundoffFloor).value;
  const double rhs = *gaussian_weighted_norm(GaussianState{1.0}, 1.0 / (p.beta * p.beta));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
  CHECK(r.norm_identity_slices > 0);
  CHECK(r.norm_identity_residual < 1e-5);

  // A small gamma stays finite on every slice.
  const auto all = appell_transform(u, p, 0.005);
  CHECK(all.norm_identity_slices == u.size());
  CHECK(all.norm_identity_residual < 1e-5);
}

TEST_CASE("round trip") {
  const auto& u = schrodinger_run();
  const auto forward = appell_transform(u, AppellParams{1.0, 2.0, 0.0, 1.0});
  const auto back = appell_transform(forward.transformed, AppellParams{2.0, 1.0, 0.0, 1.0});
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    worst = std::max(worst, l2_norm(back.transformed.slice(k) - u.slice(k)));
    scale = std::max(scale, l2_norm(u.slice(k)));
  }
  CHECK(worst / scale < 1e-5);
}

TEST_CASE("equation residuals") {
  const auto& u = schrodinger_run();
  FlowSpec free;
  const double base = flow_equation_residual(u, free);
  CHECK(base < 1e-8);
  CHECK(appell_equation_residual(u, AppellParams{1.0, 2.0, 0.0, 1.0}, free) < 1e-3);
  CHECK(appell_equation_residual(u, AppellParams{1.3, 1.3, 0.0, 1.0}, free) == doctest::Approx(base).epsilon(1e-12));

  FlowSpec heat;
  heat.A = 1.0;
  heat.B = 0.0;
  const auto h = gaussian_run(Grid(20.0, 512), 1.0, 0.0, 2000);
  CHECK(appell_equation_residual(h, AppellParams{1.0, 3.0, 1.0, 0.0}, heat) < 1e-3);
  CHECK_THROWS_AS(appell_equation_residual(h, AppellParams{1.0, 3.0, 0.0, 1.0}, heat), Error);
}

TEST_CASE("failure modes") {
  // Coarse time sampling.
  const auto coarse = gaussian_run(Grid(30.0, 512), 0.0, 1.0, 20);
  try {
    appell_transform(coarse, AppellParams{1.0, 2.0, 0.0, 1.0});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InterpolationUnderresolved);
  }
  // A field filling the box cannot be compressed by sigma > 1.
  const Grid g(10.0, 256);
  const auto times = unit_times(200);
  std::vector<ComplexField> wide;
  for (double t : times) wide.push_back(ComplexField::sample(g, [t](double x) { return std::exp(-0.02 * x * x) * (1.0 + 0.0 * t); }));
  try {
    appell_transform(SpaceTimeField(g, times, wide), AppellParams{1.0, 4.0, 0.0, 1.0});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GridOverflow);
  }
  // Not on [0, 1].
  const SpaceTimeField short_run(g, {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}, std::vector<ComplexField>(9, wide[0]));
  CHECK_THROWS_AS(appell_transform(short_run, AppellParams{1.0, 2.0}), Error);
}
