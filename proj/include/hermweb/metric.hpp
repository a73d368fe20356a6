#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "hermweb/forms.hpp"
#include "hermweb/grid.hpp"

namespace hermweb {

/// n x n complex matrix at one grid point (n <= 3, no heap allocation).
using PointMatrix = Eigen::Matrix<complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                                  kMaxComplexDim, kMaxComplexDim>;

/// Strict threshold used by every leading-principal-minor positivity test.
inline constexpr double kPositivityThreshold = 1e-12;

/// True when every leading principal minor of the Hermitian part exceeds `threshold`.
bool leading_minors_positive(const PointMatrix& m, double threshold = kPositivityThreshold);

/// adj(m) = det(m) m^{-1}, computed from cofactors (valid for singular m).
PointMatrix adjugate(const PointMatrix& m);

/// Gather the row-major block of fields into a matrix at one point.
PointMatrix matrix_at(const std::vector<ScalarField>& block, int n, std::size_t point);
/// Scatter a matrix into the row-major block at one point.
void store_at(std::vector<ScalarField>& block, int n, std::size_t point, const PointMatrix& m);

/// Hermitian metric g_{i jbar} on the torus grid, stored as a row-major n x n block.
///
/// Construction enforces the invariants: the block is Hermitian at every point
/// (within 1e-10, then symmetrized exactly) and positive definite by leading
/// principal minors. Violations throw InputError / PositivityError.
class HermitianMetricField {
 public:
  HermitianMetricField(PeriodicGrid grid, std::vector<ScalarField> g);

  static HermitianMetricField identity(const PeriodicGrid& grid);
  static HermitianMetricField from_function(
      const PeriodicGrid& grid, const std::function<PointMatrix(const Coordinates&)>& fn);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  int dim() const noexcept { return grid_.dim(); }
  const ScalarField& operator()(int i, int j) const {
    return g_[static_cast<std::size_t>(i * dim() + j)];
  }
  const std::vector<ScalarField>& components() const noexcept { return g_; }

  PointMatrix at(std::size_t point) const { return matrix_at(g_, dim(), point); }

  /// det g (real, positive).
  ScalarField determinant() const;
  ScalarField log_det() const;
  /// Row-major block of the inverse matrix field.
  std::vector<ScalarField> inverse() const;

  /// omega = sqrt(-1) sum g_{i jbar} dz_i ^ dzbar_j.
  FormField kahler_form() const;

  /// e^{u} g for a real field u.
  HermitianMetricField conformal(const ScalarField& u) const;
  /// g + h for a Hermitian block h (re-validated).
  HermitianMetricField plus(const std::vector<ScalarField>& h) const;

  /// Max-norm of the coefficient difference.
  double distance(const HermitianMetricField& other) const;

 private:
  PeriodicGrid grid_;
  std::vector<ScalarField> g_;
};

/// First grid point where the block fails the positivity test, if any.
std::optional<std::size_t> first_non_positive_point(const std::vector<ScalarField>& block, int n,
                                                    double threshold = kPositivityThreshold);

}  // namespace hermweb
