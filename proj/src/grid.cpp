#include "hermweb/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "hermweb/error.hpp"

namespace hermweb {

PeriodicGrid::PeriodicGrid(int n, std::span<const int> sizes) : n_(n) {
  if (n < 2 || n > kMaxComplexDim)
    throw InputError("complex dimension must be 2 or 3, got " + std::to_string(n));
  if (sizes.size() != static_cast<std::size_t>(2 * n))
    throw InputError("expected " + std::to_string(2 * n) + " axis sizes, got " +
                     std::to_string(sizes.size()));
  for (std::size_t a = 0; a < sizes.size(); ++a) {
    const int s = sizes[a];
    if (s != 1 && (s < 8 || s % 2 != 0))
      throw InputError("axis " + std::to_string(a) + " size " + std::to_string(s) +
                       " must be 1 or an even number >= 8");
    sizes_[a] = s;
  }
  for (int a = 2 * n; a < kMaxRealDim; ++a) sizes_[static_cast<std::size_t>(a)] = 1;
  std::size_t stride = 1;
  for (int a = 2 * n - 1; a >= 0; --a) {
    strides_[static_cast<std::size_t>(a)] = stride;
    stride *= static_cast<std::size_t>(sizes_[static_cast<std::size_t>(a)]);
  }
  points_ = stride;
}

PeriodicGrid PeriodicGrid::with_active_axes(int n, int points, std::initializer_list<int> axes) {
  std::vector<int> sizes(static_cast<std::size_t>(2 * n), 1);
  for (int a : axes) {
    if (a < 0 || a >= 2 * n) throw InputError("active axis out of range");
    sizes[static_cast<std::size_t>(a)] = points;
  }
  return PeriodicGrid(n, sizes);
}

std::array<int, kMaxRealDim> PeriodicGrid::unravel(std::size_t flat) const {
  std::array<int, kMaxRealDim> idx{};
  for (int a = 0; a < real_dim(); ++a) {
    const auto ua = static_cast<std::size_t>(a);
    idx[ua] = static_cast<int>((flat / strides_[ua]) % static_cast<std::size_t>(sizes_[ua]));
  }
  return idx;
}

Coordinates PeriodicGrid::coordinates(std::size_t flat) const {
  const auto idx = unravel(flat);
  Coordinates c{};
  for (int a = 0; a < real_dim(); ++a) {
    const auto ua = static_cast<std::size_t>(a);
    c[ua] = static_cast<double>(idx[ua]) / static_cast<double>(sizes_[ua]);
  }
  return c;
}

std::string PeriodicGrid::describe() const {
  std::ostringstream os;
  os << "n=" << n_ << " sizes=";
  for (int a = 0; a < real_dim(); ++a) os << (a ? "x" : "") << sizes_[static_cast<std::size_t>(a)];
  return os.str();
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(PeriodicGrid grid, complex value)
    : grid_(std::move(grid)), values_(grid_.size(), value) {}

ScalarField::ScalarField(PeriodicGrid grid, std::vector<complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw InputError("field has " + std::to_string(values_.size()) + " values, grid has " +
                     std::to_string(grid_.size()) + " points");
}

ScalarField ScalarField::from_function(const PeriodicGrid& grid,
                                       const std::function<complex(const Coordinates&)>& fn) {
  ScalarField f(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) f.values_[k] = fn(grid.coordinates(k));
  return f;
}

namespace {
void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw InputError("fields live on different grids");
}
}  // namespace

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(const ScalarField& other) {
  require_same_grid(*this, other);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] *= other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(complex s) {
  for (auto& v : values_) v *= s;
  return *this;
}

ScalarField& ScalarField::operator+=(complex s) {
  for (auto& v : values_) v += s;
  return *this;
}

ScalarField ScalarField::real_part() const {
  ScalarField out(grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) out.values_[k] = values_[k].real();
  return out;
}

ScalarField ScalarField::conj() const {
  ScalarField out(grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) out.values_[k] = std::conj(values_[k]);
  return out;
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::max_imag() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v.imag()));
  return m;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, const ScalarField& b) { return a *= b; }
ScalarField operator*(complex s, ScalarField a) { return a *= s; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }

ScalarField apply(const ScalarField& f, const std::function<complex(complex)>& fn) {
  ScalarField out(f.grid());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = fn(f[k]);
  return out;
}

ScalarField exp(const ScalarField& f) {
  return apply(f, [](complex v) { return std::exp(v); });
}

ScalarField log_real(const ScalarField& f) {
  ScalarField out(f.grid());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double re = f[k].real();
    if (!(re > 0.0) || std::abs(f[k].imag()) > 1e-10 * std::max(1.0, re))
      throw DomainError("log of a non-positive value at grid point " + std::to_string(k));
    out[k] = std::log(re);
  }
  return out;
}

complex mean(const ScalarField& f) {
  complex sum = 0.0;
  for (const auto& v : f.values()) sum += v;
  return sum / static_cast<double>(f.size());
}

// ---------------------------------------------------------------------------
// Spectral calculus

namespace {

constexpr double kPi = std::numbers::pi;

// Signed wavenumber of spectral index m on an axis of `size` points. The
// Nyquist mode has no well-defined odd derivative and is mapped to zero.
int wavenumber(int m, int size) {
  if (size == 1) return 0;
  if (2 * m < size) return m;
  if (2 * m == size) return 0;
  return m - size;
}

std::array<int, kMaxRealDim> wavenumbers(const PeriodicGrid& grid, std::size_t mode) {
  auto idx = grid.unravel(mode);
  for (int a = 0; a < grid.real_dim(); ++a) {
    auto& v = idx[static_cast<std::size_t>(a)];
    v = wavenumber(v, grid.axis_size(a));
  }
  return idx;
}

void check_holomorphic_index(const PeriodicGrid& grid, int i) {
  if (i < 0 || i >= grid.dim())
    throw InputError("holomorphic index " + std::to_string(i) + " out of range for n=" +
                     std::to_string(grid.dim()));
}

template <class Symbol>
ScalarField apply_multiplier(const ScalarField& f, Symbol symbol) {
  auto spec = to_spectrum(f);
  for (std::size_t m = 0; m < spec.size(); ++m) spec[m] *= symbol(m);
  return from_spectrum(f.grid(), std::move(spec));
}

}  // namespace

complex partial_symbol(const PeriodicGrid& grid, std::size_t mode, int i) {
  const auto k = wavenumbers(grid, mode);
  const double kx = k[static_cast<std::size_t>(x_axis(i))];
  const double ky = k[static_cast<std::size_t>(y_axis(i))];
  return {kPi * ky, kPi * kx};
}

complex partial_bar_symbol(const PeriodicGrid& grid, std::size_t mode, int i) {
  const auto k = wavenumbers(grid, mode);
  const double kx = k[static_cast<std::size_t>(x_axis(i))];
  const double ky = k[static_cast<std::size_t>(y_axis(i))];
  return {-kPi * ky, kPi * kx};
}

std::vector<complex> to_spectrum(const ScalarField& f) {
  std::vector<complex> spec(f.values().begin(), f.values().end());
  detail::fft_forward(f.grid(), spec);
  return spec;
}

ScalarField from_spectrum(const PeriodicGrid& grid, std::vector<complex> spectrum) {
  detail::fft_inverse(grid, spectrum);
  return ScalarField(grid, std::move(spectrum));
}

ScalarField derivative(const ScalarField& f, int axis) {
  const auto& grid = f.grid();
  if (axis < 0 || axis >= grid.real_dim()) throw InputError("real axis out of range");
  if (!grid.active(axis)) return ScalarField(grid);
  return apply_multiplier(f, [&](std::size_t m) {
    return complex(0.0, 2.0 * kPi * wavenumbers(grid, m)[static_cast<std::size_t>(axis)]);
  });
}

ScalarField partial(const ScalarField& f, int i) {
  check_holomorphic_index(f.grid(), i);
  return apply_multiplier(f, [&](std::size_t m) { return partial_symbol(f.grid(), m, i); });
}

ScalarField partial_bar(const ScalarField& f, int i) {
  check_holomorphic_index(f.grid(), i);
  return apply_multiplier(f, [&](std::size_t m) { return partial_bar_symbol(f.grid(), m, i); });
}

std::vector<ScalarField> complex_hessian(const ScalarField& f) {
  const auto& grid = f.grid();
  const int n = grid.dim();
  const auto spec = to_spectrum(f);
  std::vector<std::vector<complex>> d(static_cast<std::size_t>(n)), dbar(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& di = d[static_cast<std::size_t>(i)];
    auto& dbi = dbar[static_cast<std::size_t>(i)];
    di.resize(spec.size());
    dbi.resize(spec.size());
    for (std::size_t m = 0; m < spec.size(); ++m) {
      di[m] = partial_symbol(grid, m, i);
      dbi[m] = partial_bar_symbol(grid, m, i);
    }
  }
  std::vector<ScalarField> out;
  out.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<complex> s(spec.size());
      const auto& di = d[static_cast<std::size_t>(i)];
      const auto& dbj = dbar[static_cast<std::size_t>(j)];
      for (std::size_t m = 0; m < spec.size(); ++m) s[m] = spec[m] * di[m] * dbj[m];
      out.push_back(from_spectrum(grid, std::move(s)));
    }
  }
  return out;
}

}  // namespace hermweb
