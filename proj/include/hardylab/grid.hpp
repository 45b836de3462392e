// grid.hpp - uniform periodic grid on [-L, L), complex fields sampled on it,
// spectral differentiation and rectangle-rule quadrature.
//
// The periodic grid stands in for the real line. Every weighted quantity built
// on top of it carries a tail diagnostic (see weight.hpp), because the domain
// truncation is only harmless when the integrand is negligible at +-L.
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hardylab {

using cplx = std::complex<double>;

class Grid {
 public:
  // points must be a power of two >= 16, half_width > 0.
  Grid(double half_width, std::size_t points);

  double half_width() const noexcept { return half_width_; }
  std::size_t points() const noexcept { return points_; }
  double spacing() const noexcept { return spacing_; }

  double x(std::size_t i) const noexcept {
    return -half_width_ + spacing_ * static_cast<double>(i);
  }
  std::vector<double> coordinates() const;

  // Angular wavenumber of FFT bin j (standard FFT ordering).
  double wavenumber(std::size_t j) const noexcept;
  std::vector<double> wavenumbers() const;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.points_ == b.points_ && a.half_width_ == b.half_width_;
  }

 private:
  double half_width_;
  std::size_t points_;
  double spacing_;
};

class ComplexField {
 public:
  ComplexField(Grid grid, std::vector<cplx> values);
  // Samples fn(x) at every grid point.
  static ComplexField sample(const Grid& grid, const std::function<cplx(double)>& fn);
  static ComplexField zeros(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  const cplx& operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  ComplexField& operator+=(const ComplexField& other);
  ComplexField& operator-=(const ComplexField& other);
  ComplexField& operator*=(cplx scale);

  friend ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
  friend ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }
  friend ComplexField operator*(cplx s, ComplexField a) { return a *= s; }

 private:
  Grid grid_;
  std::vector<cplx> values_;
};

// Times strictly increasing; one slice per time, all on the same grid.
class SpaceTimeField {
 public:
  SpaceTimeField(Grid grid, std::vector<double> times, std::vector<ComplexField> slices);

  const Grid& grid() const noexcept { return grid_; }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<ComplexField>& slices() const noexcept { return slices_; }
  const ComplexField& slice(std::size_t k) const { return slices_.at(k); }
  std::size_t size() const noexcept { return times_.size(); }

  // True when the time steps agree to a relative 1e-9.
  bool uniform_in_time() const noexcept;

 private:
  Grid grid_;
  std::vector<double> times_;
  std::vector<ComplexField> slices_;
};

// Throws InvalidField if any sample is NaN or infinite.
void require_finite(std::span<const cplx> values, const char* where);

// Unnormalized forward / inverse DFT (inverse includes the 1/N).
std::vector<cplx> forward_transform(std::span<const cplx> values);
std::vector<cplx> inverse_transform(std::span<const cplx> coefficients);

// Multiplies the spectrum by symbol(k) and transforms back.
ComplexField apply_multiplier(const ComplexField& field,
                              const std::function<cplx(double)>& symbol);

ComplexField spectral_laplacian(const ComplexField& field);
// First derivative; the Nyquist mode is zeroed so real data stays real.
ComplexField spectral_derivative(const ComplexField& field);

double l2_norm(const ComplexField& field);
cplx inner_product(const ComplexField& f, const ComplexField& g);

// Pointwise product with a real or complex function of x.
ComplexField multiply(const ComplexField& field, const std::function<cplx(double)>& fn);

// Band-limited evaluation of a field at arbitrary points. The spectrum is
// zero-padded by the oversampling factor and the refined samples are read with
// an eight-point Lagrange stencil. Points outside [-L, L) return zero.
class SpectralInterpolator {
 public:
  explicit SpectralInterpolator(const ComplexField& field, std::size_t oversampling = 4);

  cplx operator()(double x) const;

 private:
  double half_width_;
  double fine_spacing_;
  std::vector<cplx> fine_;
};

}  // namespace hardylab
