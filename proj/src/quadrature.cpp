#include "hardylab/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

#include "hardylab/errors.hpp"

namespace hardylab {

double simpson(std::span<const double> values, double step) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * step * (values[0] + values[1]);
  if (n == 4) {
    return 3.0 * step / 8.0 * (values[0] + 3.0 * values[1] + 3.0 * values[2] + values[3]);
  }
  std::size_t last = (n % 2 == 1) ? n - 1 : n - 4;
  double sum = values[0] + values[last];
  for (std::size_t i = 1; i < last; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * values[i];
  double total = sum * step / 3.0;
  if (last != n - 1) {
    total += 3.0 * step / 8.0 *
             (values[last] + 3.0 * values[last + 1] + 3.0 * values[last + 2] + values[last + 3]);
  }
  return total;
}

double adaptive_integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  return gauss_kronrod<double, 61>::integrate(f, a, b, 25, rel_tol, &error);
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int pieces) {
  using boost::math::quadrature::gauss;
  const double width = (b - a) / pieces;
  double total = 0.0;
  for (int p = 0; p < pieces; ++p) {
    const double lo = a + width * p;
    total += gauss<double, 20>::integrate(f, lo, lo + width);
  }
  return total;
}

double linear_fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorKind::InsufficientSamples, "linear fit needs two or more paired samples");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace hardylab
