#include "doctest.h"

#include <cmath>

#include "hardylab/carleman.hpp"
#include "hardylab/errors.hpp"

using namespace hardylab;

TEST_CASE("bump normalization and support") {
  const auto b = make_bump(0.0, 1.0, 0.5, 0.25, 1.0, 8.0);
  CHECK(std::abs(b.value(0.0, 0.5)) == doctest::Approx(1.0).epsilon(1e-15));
  for (double x = -1.0; x <= 1.0; x += 0.01) CHECK(std::abs(b.value(x, 0.5)) <= 1.0 + 1e-15);
  CHECK(std::abs(b.dx(1.0 - 1e-9, 0.5)) < 1e-300);
  CHECK(std::abs(b.dt(0.0, 0.75 - 1e-9)) < 1e-300);
  CHECK(b.value(1.5, 0.5) == cplx(0.0));
  CHECK_THROWS_AS(make_bump(7.5, 1.0, 0.5, 0.25, 1.0, 8.0), Error);
  CHECK_THROWS_AS(make_bump(0.0, 1.0, 0.9, 0.25, 1.0, 8.0), Error);
}

TEST_CASE("analytic and spectral laplacian of a bump agree") {
  const auto b = make_bump(0.3, 1.5, 0.5, 0.25, cplx(0.5, 1.0), 8.0);
  // The bump is smooth but not analytic, so convergence is slower than geometric.
  const Grid g(8.0, 4096);
  const auto f = ComplexField::sample(g, [&](double x) { return b.value(x, 0.47); });
  const auto exact = ComplexField::sample(g, [&](double x) { return b.dxx(x, 0.47); });
  CHECK(l2_norm(spectral_laplacian(f) - exact) / l2_norm(exact) < 1e-8);
  const auto d1 = ComplexField::sample(g, [&](double x) { return b.dx(x, 0.47); });
  CHECK(l2_norm(spectral_derivative(f) - d1) / l2_norm(d1) < 1e-8);
}

TEST_CASE("bump derivatives against finite differences") {
  const auto b = make_bump(-0.4, 0.9, 0.45, 0.3, cplx(1.0, -2.0), 8.0);
  const double h = 1e-5;
  for (double x : {-0.9, -0.4, 0.1}) {
    for (double t : {0.3, 0.45, 0.6}) {
      CHECK(std::abs(b.dt(x, t) - (b.value(x, t + h) - b.value(x, t - h)) / (2 * h)) < 1e-6);
      CHECK(std::abs(b.dx(x, t) - (b.value(x + h, t) - b.value(x - h, t)) / (2 * h)) < 1e-6);
    }
  }
}

TEST_CASE("carleman inequality on single bumps") {
  const auto b = make_bump(0.5, 1.0, 0.5, 0.3, 1.0, 8.0);
  for (double R : {1.0, 5.0, 10.0}) {
    for (auto op : {CarlemanOperator::Schrodinger, CarlemanOperator::Parabolic}) {
      const auto r = carleman_check(b, CarlemanConfig{1.0, 0.5, R, op}, 128);
      CHECK(r.margin >= 0.0);
      CHECK(r.pass);
      CHECK(r.constant == doctest::Approx(R * std::sqrt(0.5 / 8.0)));
    }
  }
  const auto zero = carleman_check(make_bump(0.0, 1.0, 0.5, 0.25, 0.0, 8.0), CarlemanConfig{}, 64);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  CHECK(zero.pass);
}

TEST_CASE("carleman sweep shape and determinism") {
  CarlemanSweepSpec spec;
  spec.bumps = 3;
  spec.nodes = 48;
  const auto rows = carleman_sweep(spec);
  CHECK(rows.size() == 3 * 27);
  for (const auto& r : rows) CHECK(r.report.pass);
  spec.threads = 3;
  const auto again = carleman_sweep(spec);
  CHECK(to_csv(rows) == to_csv(again));
  const auto csv = to_csv(rows);
  CHECK(csv.rfind("mu,epsilon,R,operator,lhs,rhs,margin,pass\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 82);

  const auto a = random_bumps(5, 7, 8.0);
  const auto b = random_bumps(5, 7, 8.0);
  const auto c = random_bumps(5, 8, 8.0);
  CHECK(a[4].center_x == b[4].center_x);
  CHECK(a[4].center_x != c[4].center_x);
}

TEST_CASE("commutator expansion") {
  const auto b = make_bump(0.0, 1.0, 0.5, 0.3, 1.0, 8.0);
  for (auto op : {CarlemanOperator::Schrodinger, CarlemanOperator::Parabolic}) {
    const auto e = commutator_expansion_check(b, CarlemanConfig{1.0, 0.5, 5.0, op});
    CHECK(e.slack >= 0.0);
    CHECK(e.residual < 1e-6);
    CHECK_FALSE(e.active_terms.empty());
    const auto small = commutator_expansion_check(b, CarlemanConfig{1.0, 1e-8, 5.0, op});
    CHECK(small.lower_bound < 1e-6 * small.expanded);
    CHECK(small.slack >= 0.0);
  }
}

TEST_CASE("parameter window") {
  const auto near_zero = parameter_window(1.0, 1e-6);
  CHECK(near_zero.nonempty);
  CHECK(near_zero.lower == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(near_zero.upper == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(near_zero.contains(0.75));
  CHECK_FALSE(near_zero.contains(0.5));

  const auto empty = parameter_window(0.4, 0.1);
  CHECK_FALSE(empty.nonempty);
  CHECK(empty.lower == doctest::Approx(0.79128).epsilon(1e-5));
  CHECK(empty.upper == doctest::Approx(0.4 / 1.1));

  const auto half = parameter_window(11.0, 0.5);
  CHECK(half.lower == doctest::Approx(std::pow(1.5, 1.5) / 0.25).epsilon(1e-12));
  CHECK(half.lower == doctest::Approx(7.348).epsilon(1e-4));
  CHECK_FALSE(half.nonempty);
  CHECK(parameter_window(11.1, 0.5).nonempty);

  // gamma > 1/2 is needed as eps -> 0.
  CHECK_FALSE(parameter_window(0.49, 1e-6).nonempty);
  CHECK(parameter_window(0.51, 1e-6).nonempty);
}

TEST_CASE("cutoffs") {
  const double M = 2.0;
  const double R = 5.0;
  CHECK(cutoff_theta(1.9, M) == 1.0);
  CHECK(cutoff_theta(4.1, M) == 0.0);
  CHECK(cutoff_eta(0.5, R) == 1.0);
  CHECK(cutoff_eta(0.05, R) == 0.0);
  CHECK(cutoff_eta(0.97, R) == 0.0);

  const Grid g(20.0, 512);
  std::vector<double> times;
  for (int k = 0; k <= 20; ++k) times.push_back(0.05 * k);
  std::vector<ComplexField> ones(times.size(), ComplexField::sample(g, [](double) { return 1.0; }));
  const auto r = cutoff_apply(SpaceTimeField(g, times, ones), M, R);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const bool core_t = times[k] >= 1.0 / R && times[k] <= 1.0 - 1.0 / R;
    for (std::size_t i = 0; i < g.points(); ++i) {
      const bool core_x = std::abs(g.x(i)) <= M;
      if (core_t && core_x) {
        CHECK(r.g.slice(k)[i] == cplx(1.0));
      }
      if (core_t) CHECK(r.defect_time.slice(k)[i] == cplx(0.0));
      if (core_x) CHECK(std::abs(r.defect_space.slice(k)[i]) < 1e-10);
    }
  }
  CHECK_THROWS_AS(cutoff_apply(SpaceTimeField(g, times, ones), 12.0, R), Error);
  CHECK_THROWS_AS(cutoff_apply(SpaceTimeField(g, times, ones), M, 1.5), Error);
}

TEST_CASE("space defect decays with the cutoff radius") {
  const Grid g(20.0, 1024);
  const std::vector<double> times{0.5};
  const std::vector<ComplexField> u{ComplexField::sample(g, [](double x) { return std::exp(-x * x / 8.0); })};
  const SpaceTimeField field(g, times, u);
  const double near = l2_norm(cutoff_apply(field, 2.0, 5.0).defect_space.slice(0));
  const double far = l2_norm(cutoff_apply(field, 4.0, 5.0).defect_space.slice(0));
  CHECK(near / far >= 1.9);
}

TEST_CASE("core phase sign") {
  const auto rows = core_phase_scan({0.5, 1.0, 2.0, 4.0, 8.0}, {0.05, 0.1, 0.2, 0.3});
  CHECK(rows.size() == 20);
  for (const auto& r : rows) {
    if (r.condition) CHECK(r.min_phase > 0.0);
  }
}

TEST_CASE("configuration validation") {
  try {
    validate(CarlemanConfig{-1.0, 0.5, 1.0});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "ParameterOutOfRange: carleman.μ");
  }
  CHECK_THROWS_AS(validate(CarlemanConfig{1.0, 0.0, 1.0}), Error);
}
