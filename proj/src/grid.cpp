#include "hardylab/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "hardylab/errors.hpp"

namespace hardylab {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// FFTW planning is not thread-safe; execution on new arrays is. Plans are built
// once per (size, direction) under a lock and reused with fftw_execute_dft.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

std::vector<cplx> execute(std::span<const cplx> values, int sign) {
  std::vector<cplx> in(values.begin(), values.end());
  std::vector<cplx> out(values.size());
  fftw_plan plan = PlanCache::instance().get(values.size(), sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw Error(ErrorKind::GridMismatch, "fields live on different grids");
}

}  // namespace

Grid::Grid(double half_width, std::size_t points)
    : half_width_(half_width), points_(points), spacing_(2.0 * half_width / static_cast<double>(points)) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw Error(ErrorKind::ParameterOutOfRange, "grid.half_width must be positive");
  }
  if (points < 16 || !is_power_of_two(points)) {
    throw Error(ErrorKind::ParameterOutOfRange, "grid.points must be a power of two >= 16");
  }
}

std::vector<double> Grid::coordinates() const {
  std::vector<double> xs(points_);
  for (std::size_t i = 0; i < points_; ++i) xs[i] = x(i);
  return xs;
}

double Grid::wavenumber(std::size_t j) const noexcept {
  const double k0 = std::numbers::pi / half_width_;
  const auto n = static_cast<long long>(points_);
  auto m = static_cast<long long>(j);
  if (m >= n / 2) m -= n;
  return k0 * static_cast<double>(m);
}

std::vector<double> Grid::wavenumbers() const {
  std::vector<double> ks(points_);
  for (std::size_t j = 0; j < points_; ++j) ks[j] = wavenumber(j);
  return ks;
}

void require_finite(std::span<const cplx> values, const char* where) {
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorKind::InvalidField, std::string("non-finite sample in ") + where);
    }
  }
}

ComplexField::ComplexField(Grid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.points()) {
    throw Error(ErrorKind::InvalidField, "sample count does not match grid points");
  }
  require_finite(values_, "ComplexField");
}

ComplexField ComplexField::sample(const Grid& grid, const std::function<cplx(double)>& fn) {
  std::vector<cplx> v(grid.points());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.x(i));
  return ComplexField(grid, std::move(v));
}

ComplexField ComplexField::zeros(const Grid& grid) {
  return ComplexField(grid, std::vector<cplx>(grid.points()));
}

ComplexField& ComplexField::operator+=(const ComplexField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

ComplexField& ComplexField::operator*=(cplx scale) {
  for (auto& v : values_) v *= scale;
  return *this;
}

SpaceTimeField::SpaceTimeField(Grid grid, std::vector<double> times, std::vector<ComplexField> slices)
    : grid_(grid), times_(std::move(times)), slices_(std::move(slices)) {
  if (times_.size() != slices_.size()) {
    throw Error(ErrorKind::InvalidField, "time count and slice count differ");
  }
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (!(times_[k] > times_[k - 1])) {
      throw Error(ErrorKind::InvalidField, "times must be strictly increasing");
    }
  }
  for (const auto& s : slices_) require_same_grid(grid_, s.grid());
}

bool SpaceTimeField::uniform_in_time() const noexcept {
  if (times_.size() < 3) return true;
  const double dt = (times_.back() - times_.front()) / static_cast<double>(times_.size() - 1);
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (std::abs((times_[k] - times_[k - 1]) - dt) > 1e-9 * dt) return false;
  }
  return true;
}

std::vector<cplx> forward_transform(std::span<const cplx> values) {
  return execute(values, FFTW_FORWARD);
}

std::vector<cplx> inverse_transform(std::span<const cplx> coefficients) {
  auto out = execute(coefficients, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(coefficients.size());
  for (auto& v : out) v *= scale;
  return out;
}

ComplexField apply_multiplier(const ComplexField& field, const std::function<cplx(double)>& symbol) {
  const Grid& g = field.grid();
  auto spec = forward_transform(field.values());
  for (std::size_t j = 0; j < spec.size(); ++j) spec[j] *= symbol(g.wavenumber(j));
  return ComplexField(g, inverse_transform(spec));
}

ComplexField spectral_laplacian(const ComplexField& field) {
  return apply_multiplier(field, [](double k) { return cplx(-k * k, 0.0); });
}

ComplexField spectral_derivative(const ComplexField& field) {
  const Grid& g = field.grid();
  auto spec = forward_transform(field.values());
  const std::size_t n = spec.size();
  for (std::size_t j = 0; j < n; ++j) spec[j] *= cplx(0.0, g.wavenumber(j));
  spec[n / 2] = 0.0;
  return ComplexField(g, inverse_transform(spec));
}

double l2_norm(const ComplexField& field) {
  double sum = 0.0;
  for (const auto& v : field.values()) sum += std::norm(v);
  return std::sqrt(sum * field.grid().spacing());
}

cplx inner_product(const ComplexField& f, const ComplexField& g) {
  require_same_grid(f.grid(), g.grid());
  cplx sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * std::conj(g[i]);
  return sum * f.grid().spacing();
}

ComplexField multiply(const ComplexField& field, const std::function<cplx(double)>& fn) {
  const Grid& g = field.grid();
  std::vector<cplx> v(field.values().begin(), field.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= fn(g.x(i));
  return ComplexField(g, std::move(v));
}

SpectralInterpolator::SpectralInterpolator(const ComplexField& field, std::size_t oversampling)
    : half_width_(field.grid().half_width()) {
  const std::size_t n = field.size();
  const std::size_t m = n * oversampling;
  auto spec = forward_transform(field.values());
  std::vector<cplx> padded(m);
  for (std::size_t j = 0; j < n / 2; ++j) padded[j] = spec[j];
  for (std::size_t j = n / 2 + 1; j < n; ++j) padded[m - n + j] = spec[j];
  // Split the Nyquist bin symmetrically so the refined interpolant stays real
  // for real data and agrees with the coarse samples.
  padded[n / 2] = 0.5 * spec[n / 2];
  padded[m - n / 2] = 0.5 * spec[n / 2];
  fine_ = inverse_transform(padded);
  for (auto& v : fine_) v *= static_cast<double>(oversampling);
  fine_spacing_ = 2.0 * half_width_ / static_cast<double>(m);
}

cplx SpectralInterpolator::operator()(double x) const {
  if (x < -half_width_ || x >= half_width_) return 0.0;
  const auto m = static_cast<long long>(fine_.size());
  const double pos = (x + half_width_) / fine_spacing_;
  const auto base = static_cast<long long>(std::floor(pos));
  const double frac = pos - static_cast<double>(base);
  constexpr int kStencil = 8;
  constexpr int kLeft = kStencil / 2 - 1;
  if (frac == 0.0) return fine_[static_cast<std::size_t>(((base % m) + m) % m)];
  cplx result = 0.0;
  for (int a = 0; a < kStencil; ++a) {
    const double na = static_cast<double>(a - kLeft);
    double w = 1.0;
    for (int b = 0; b < kStencil; ++b) {
      if (b == a) continue;
      const double nb = static_cast<double>(b - kLeft);
      w *= (frac - nb) / (na - nb);
    }
    const long long idx = ((base + a - kLeft) % m + m) % m;
    result += w * fine_[static_cast<std::size_t>(idx)];
  }
  return result;
}

}  // namespace hardylab
