#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hardylab/errors.hpp"
#include "hardylab/grid.hpp"
#include "hardylab/quadrature.hpp"

using namespace hardylab;
using std::numbers::pi;

namespace {

double rel_l2(const ComplexField& a, const ComplexField& b) { return l2_norm(a - b) / l2_norm(b); }

}  // namespace

TEST_CASE("grid construction") {
  const Grid g(20.0, 1024);
  CHECK(g.spacing() * 1024.0 == doctest::Approx(40.0).epsilon(1e-15));
  CHECK(g.x(0) == -20.0);
  CHECK_THROWS_AS(Grid(20.0, 1000), Error);
  CHECK_THROWS_AS(Grid(20.0, 8), Error);
  CHECK_THROWS_AS(Grid(-1.0, 64), Error);
}

TEST_CASE("non-finite samples are rejected") {
  const Grid g(5.0, 16);
  std::vector<cplx> v(16, 1.0);
  v[3] = std::nan("");
  CHECK_THROWS_AS(ComplexField(g, v), Error);
  CHECK_THROWS_AS(ComplexField(g, std::vector<cplx>(8, 1.0)), Error);
}

TEST_CASE("laplacian of a grid exponential") {
  const Grid g(20.0, 256);
  const double k = g.wavenumber(7);
  const auto e = ComplexField::sample(g, [k](double x) { return std::exp(cplx(0, k * x)); });
  const auto lap = spectral_laplacian(e);
  CHECK(rel_l2(lap, cplx(-k * k) * e) < 1e-12);
}

TEST_CASE("laplacian of a constant vanishes") {
  const Grid g(20.0, 256);
  const auto one = ComplexField::sample(g, [](double) { return 1.0; });
  CHECK(l2_norm(spectral_laplacian(one)) < 1e-12);
}

TEST_CASE("laplacian of a gaussian") {
  const Grid g(20.0, 1024);
  const auto u = ComplexField::sample(g, [](double x) { return std::exp(-x * x); });
  const auto exact = ComplexField::sample(g, [](double x) { return (4 * x * x - 2) * std::exp(-x * x); });
  CHECK(rel_l2(spectral_laplacian(u), exact) < 1e-10);
}

TEST_CASE("l2 norm") {
  const Grid g(20.0, 1024);
  CHECK(l2_norm(ComplexField::zeros(g)) == 0.0);
  const auto u = ComplexField::sample(g, [](double x) { return std::exp(-x * x); });
  CHECK(l2_norm(u) == doctest::Approx(std::pow(pi / 2, 0.25)).epsilon(1e-12));
  CHECK(l2_norm(u) == doctest::Approx(1.11951).epsilon(1e-5));
}

TEST_CASE("l2 norm of a smooth bump against adaptive quadrature") {
  const Grid g(4.0, 1024);
  auto bump = [](double x) { return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; };
  const double mass = adaptive_integrate(bump, -1.0, 1.0);
  const auto f = ComplexField::sample(g, [&](double x) { return bump(x) / mass; });
  const double oracle = std::sqrt(adaptive_integrate([&](double x) { return std::pow(bump(x) / mass, 2); }, -1.0, 1.0));
  CHECK(std::abs(l2_norm(f) - oracle) < 1e-8);
}

TEST_CASE("inner products") {
  const Grid g(20.0, 512);
  const auto f = ComplexField::sample(g, [](double x) { return cplx(std::exp(-x * x), x * std::exp(-x * x / 2)); });
  const cplx ff = inner_product(f, f);
  CHECK(std::abs(ff.imag()) < 1e-14);
  CHECK(ff.real() == doctest::Approx(std::pow(l2_norm(f), 2)).epsilon(1e-14));

  const double k1 = g.wavenumber(3);
  const double k2 = g.wavenumber(11);
  const auto e1 = ComplexField::sample(g, [k1](double x) { return std::exp(cplx(0, k1 * x)); });
  const auto e2 = ComplexField::sample(g, [k2](double x) { return std::exp(cplx(0, k2 * x)); });
  CHECK(std::abs(inner_product(e1, e2)) < 1e-12 * l2_norm(e1) * l2_norm(e2));

  const auto even = ComplexField::sample(g, [](double x) { return std::exp(-x * x); });
  const auto odd = ComplexField::sample(g, [](double x) { return x * std::exp(-x * x); });
  CHECK(std::abs(inner_product(even, odd)) < 1e-14);
}

TEST_CASE("grid mismatch") {
  const auto a = ComplexField::zeros(Grid(10.0, 64));
  const auto b = ComplexField::zeros(Grid(10.0, 128));
  CHECK_THROWS_AS(inner_product(a, b), Error);
}

TEST_CASE("space-time field validation") {
  const Grid g(5.0, 16);
  const auto z = ComplexField::zeros(g);
  CHECK_THROWS_AS(SpaceTimeField(g, {0.0, 0.0}, {z, z}), Error);
  CHECK_THROWS_AS(SpaceTimeField(g, {0.0, 1.0}, {z}), Error);
  CHECK(SpaceTimeField(g, {0.0, 0.5, 1.0}, {z, z, z}).uniform_in_time());
}

TEST_CASE("spectral interpolation reproduces a band-limited field off the grid") {
  const Grid g(20.0, 512);
  const auto u = ComplexField::sample(g, [](double x) { return std::exp(-x * x) * std::exp(cplx(0, 0.5 * x)); });
  const SpectralInterpolator interp(u);
  for (double x : {-3.1234, -0.017, 0.5, 2.71}) {
    CHECK(std::abs(interp(x) - std::exp(-x * x) * std::exp(cplx(0, 0.5 * x))) < 1e-9);
  }
  CHECK(interp(25.0) == cplx(0.0));
}
