#include "doctest.h"

#include <cmath>

#include "hardylab/counterexample.hpp"
#include "hardylab/errors.hpp"

using namespace hardylab;

namespace {

const WeightInterpolant& weight() {
  static const WeightInterpolant a(solve_weight_ode(50.0));
  return a;
}

}  // namespace

TEST_CASE("ode trajectory") {
  const auto traj = solve_weight_ode(50.0);
  CHECK(traj.a.front() == 1.0);
  CHECK(traj.b_prime.front() == 0.0);
  CHECK(traj.t_max() == 50.0);
  CHECK(first_integral_residual(traj) < 1e-6);
  for (double a : traj.a) CHECK(a > 0.0);
  CHECK_THROWS_AS(solve_weight_ode(1.0, 2e-3), Error);
}

TEST_CASE("interpolant matches the nodes") {
  const auto traj = solve_weight_ode(2.0);
  const WeightInterpolant a(traj);
  for (std::size_t k = 0; k < traj.times.size(); k += 137) {
    CHECK(a(traj.times[k]).a == doctest::Approx(traj.a[k]).epsilon(1e-14));
  }
  CHECK(a(0.0).a1 == 0.0);
  CHECK_THROWS_AS(a(2.5), Error);
}

TEST_CASE("scaled weights") {
  const auto& a = weight();
  for (double R : {0.5, 3.0, 10.0}) CHECK(scaled_weight(a, R, 0.0) == doctest::Approx(R));
  for (double t : {0.0, 0.3, 1.7, 12.0}) CHECK(scaled_weight(a, 1.0, t) == a(t).a);
  CHECK(scaled_weight(a, 4.0, -0.7) == scaled_weight(a, 4.0, 0.7));

  double prev = 1e9;
  for (double R : {5.0, 10.0, 20.0, 50.0}) {
    const double v = scaled_weight(a, R, 1.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(scaled_weight(a, 10.0, 1.0) < 0.1);
  CHECK_THROWS_AS(scaled_weight(a, 100.0, 1.0), Error);
}

TEST_CASE("scaled weights solve the equation") {
  std::vector<double> times;
  for (int k = 0; k < 100; ++k) times.push_back(-1.0 + 0.02 * k + 0.0037);
  CHECK(ode_residual(weight(), 1.0, times) < 1e-6);
  CHECK(ode_residual(weight(), 10.0, times) < 1e-4);
}

TEST_CASE("divergence table for R = 1") {
  const auto& a = weight();
  const auto table = divergence_demonstration(a, 1.0, {5.0, 10.0, 20.0, 40.0});
  CHECK(table.h0_divergent_regime);
  CHECK(2.0 * table.weight_rate_at_one < 0.25);
  REQUIRE(table.rows.size() == 4);
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const double l0 = table.rows[i - 1].L;
    // Growth faster than e^{L^2} between successive half-widths.
    CHECK(table.rows[i].log_H0 - table.rows[i - 1].log_H0 > l0 * l0);
    CHECK_FALSE(table.rows[i].h0_converged);
  }
  CHECK(table.rows.back().h1_converged);
  CHECK(table.rows.back().H_plus1 == doctest::Approx(table.rows.back().H_minus1).epsilon(1e-12));
}

TEST_CASE("small R converges") {
  const auto table = divergence_demonstration(weight(), 0.1, {5.0, 10.0, 20.0, 40.0});
  CHECK_FALSE(table.h0_divergent_regime);
  CHECK(table.rows.back().h0_converged);
  CHECK(table.rows.back().h1_converged);
  CHECK(table.regime_note.find("converges") != std::string::npos);
}

TEST_CASE("divergence table input checks and csv") {
  CHECK_THROWS_AS(divergence_demonstration(weight(), 1.0, {10.0, 5.0}), Error);
  CHECK_THROWS_AS(divergence_demonstration(weight(), 1.0, {}), Error);
  const auto csv = to_csv(divergence_demonstration(weight(), 1.0, {5.0, 10.0}));
  CHECK(csv.rfind("R,L,H0_truncated,log_H0,H_minus1,H_plus1,h0_converged,h1_converged\n", 0) == 0);
}
