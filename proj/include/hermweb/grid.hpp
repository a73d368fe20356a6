#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hermweb {

using complex = std::complex<double>;

inline constexpr int kMaxComplexDim = 3;
inline constexpr int kMaxRealDim = 2 * kMaxComplexDim;
inline constexpr complex kI{0.0, 1.0};

/// Real axis carrying Re z_i (holomorphic index i is 0-based).
constexpr int x_axis(int i) { return 2 * i; }
/// Real axis carrying Im z_i.
constexpr int y_axis(int i) { return 2 * i + 1; }

using Coordinates = std::array<double, kMaxRealDim>;

/// Uniform periodic grid on the unit torus R^{2n}/Z^{2n}.
///
/// Real axes are ordered x1, y1, x2, y2, ... . An axis is active when it has
/// more than one point; inactive (collapsed) axes have exactly one point at
/// coordinate 0 and every derivative along them vanishes. Active axes need an
/// even number of points, at least 8. Storage is row-major with axis 0
/// slowest.
class PeriodicGrid {
 public:
  PeriodicGrid(int n, std::span<const int> sizes);
  PeriodicGrid(int n, std::initializer_list<int> sizes)
      : PeriodicGrid(n, std::span<const int>(sizes.begin(), sizes.size())) {}

  /// Grid with `points` points on each listed real axis and all others collapsed.
  static PeriodicGrid with_active_axes(int n, int points, std::initializer_list<int> axes);

  int dim() const noexcept { return n_; }
  int real_dim() const noexcept { return 2 * n_; }
  int axis_size(int axis) const { return sizes_.at(static_cast<std::size_t>(axis)); }
  bool active(int axis) const { return axis_size(axis) > 1; }
  std::size_t size() const noexcept { return points_; }
  std::size_t stride(int axis) const { return strides_.at(static_cast<std::size_t>(axis)); }
  std::span<const int> sizes() const { return {sizes_.data(), static_cast<std::size_t>(real_dim())}; }

  std::array<int, kMaxRealDim> unravel(std::size_t flat) const;
  Coordinates coordinates(std::size_t flat) const;

  std::string describe() const;

  bool operator==(const PeriodicGrid& other) const = default;

 private:
  int n_;
  std::array<int, kMaxRealDim> sizes_{};
  std::array<std::size_t, kMaxRealDim> strides_{};
  std::size_t points_ = 1;
};

/// Complex-valued field sampled on a PeriodicGrid.
class ScalarField {
 public:
  explicit ScalarField(PeriodicGrid grid, complex value = 0.0);
  ScalarField(PeriodicGrid grid, std::vector<complex> values);

  static ScalarField from_function(const PeriodicGrid& grid,
                                   const std::function<complex(const Coordinates&)>& fn);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const complex> values() const noexcept { return values_; }
  std::span<complex> values() noexcept { return values_; }
  complex operator[](std::size_t k) const { return values_[k]; }
  complex& operator[](std::size_t k) { return values_[k]; }

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(const ScalarField& other);
  ScalarField& operator*=(complex s);
  ScalarField& operator+=(complex s);

  ScalarField real_part() const;
  ScalarField conj() const;
  double max_abs() const;
  /// Largest |Im| over the grid; zero for real fields.
  double max_imag() const;

 private:
  PeriodicGrid grid_;
  std::vector<complex> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, const ScalarField& b);
ScalarField operator*(complex s, ScalarField a);
ScalarField operator-(ScalarField a);

/// Pointwise map.
ScalarField apply(const ScalarField& f, const std::function<complex(complex)>& fn);
ScalarField exp(const ScalarField& f);
/// Natural log of a real positive field; throws DomainError otherwise.
ScalarField log_real(const ScalarField& f);

/// Arithmetic mean over grid points.
complex mean(const ScalarField& f);

/// Spectral d/dx along a real axis.
ScalarField derivative(const ScalarField& f, int axis);
/// Spectral d/dz_i = (d/dx_i - i d/dy_i) / 2.
ScalarField partial(const ScalarField& f, int i);
/// Spectral d/dzbar_i = (d/dx_i + i d/dy_i) / 2.
ScalarField partial_bar(const ScalarField& f, int i);

/// Row-major n x n block of d^2 f / dz_i dzbar_j, from a single forward transform.
std::vector<ScalarField> complex_hessian(const ScalarField& f);

/// Fourier multiplier of d/dz_i at a flat spectral index (Nyquist modes map to 0).
complex partial_symbol(const PeriodicGrid& grid, std::size_t mode, int i);
complex partial_bar_symbol(const PeriodicGrid& grid, std::size_t mode, int i);

/// Forward / inverse transforms on the grid (inverse is normalized).
std::vector<complex> to_spectrum(const ScalarField& f);
ScalarField from_spectrum(const PeriodicGrid& grid, std::vector<complex> spectrum);

}  // namespace hermweb
