#include "hermweb/metric.hpp"

#include <algorithm>
#include <cmath>

#include "hermweb/error.hpp"
#include "hermweb/parallel.hpp"

namespace hermweb {

bool leading_minors_positive(const PointMatrix& m, double threshold) {
  const PointMatrix h = 0.5 * (m + m.adjoint());
  for (Eigen::Index k = 1; k <= h.rows(); ++k) {
    const double minor = h.topLeftCorner(k, k).determinant().real();
    if (!(minor > threshold)) return false;
  }
  return true;
}

PointMatrix adjugate(const PointMatrix& m) {
  const auto n = m.rows();
  PointMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1.0;
  } else if (n == 2) {
    adj << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  } else {
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        const int r1 = (r + 1) % 3, r2 = (r + 2) % 3;
        const int c1 = (c + 1) % 3, c2 = (c + 2) % 3;
        // cyclic index choice already carries the cofactor sign
        adj(c, r) = m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1);
      }
  }
  return adj;
}

PointMatrix matrix_at(const std::vector<ScalarField>& block, int n, std::size_t point) {
  PointMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = block[static_cast<std::size_t>(i * n + j)][point];
  return m;
}

void store_at(std::vector<ScalarField>& block, int n, std::size_t point, const PointMatrix& m) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) block[static_cast<std::size_t>(i * n + j)][point] = m(i, j);
}

std::optional<std::size_t> first_non_positive_point(const std::vector<ScalarField>& block, int n,
                                                    double threshold) {
  const std::size_t points = block.front().size();
  for (std::size_t x = 0; x < points; ++x)
    if (!leading_minors_positive(matrix_at(block, n, x), threshold)) return x;
  return std::nullopt;
}

HermitianMetricField::HermitianMetricField(PeriodicGrid grid, std::vector<ScalarField> g)
    : grid_(std::move(grid)), g_(std::move(g)) {
  const int n = grid_.dim();
  if (g_.size() != static_cast<std::size_t>(n * n))
    throw InputError("metric needs " + std::to_string(n * n) + " coefficient fields");
  for (const auto& c : g_)
    if (!(c.grid() == grid_)) throw InputError("metric coefficient on a different grid");
  for (std::size_t x = 0; x < grid_.size(); ++x) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        auto& gij = g_[static_cast<std::size_t>(i * n + j)][x];
        auto& gji = g_[static_cast<std::size_t>(j * n + i)][x];
        const double scale = std::max({1.0, std::abs(gij), std::abs(gji)});
        if (std::abs(gij - std::conj(gji)) > 1e-10 * scale)
          throw InputError("metric is not Hermitian at grid point " + std::to_string(x) +
                           " (entry " + std::to_string(i + 1) + std::to_string(j + 1) + ")");
        if (i == j) {
          gij = gij.real();
        } else {
          const complex avg = 0.5 * (gij + std::conj(gji));
          gij = avg;
          gji = std::conj(avg);
        }
      }
    }
  }
  if (auto bad = first_non_positive_point(g_, n)) {
    const auto c = grid_.coordinates(*bad);
    std::string where;
    for (int a = 0; a < grid_.real_dim(); ++a)
      where += (a ? "," : "") + std::to_string(c[static_cast<std::size_t>(a)]);
    throw PositivityError("metric is not positive definite at grid point " +
                              std::to_string(*bad) + " (" + where + ")",
                          *bad);
  }
}

HermitianMetricField HermitianMetricField::identity(const PeriodicGrid& grid) {
  const int n = grid.dim();
  std::vector<ScalarField> g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.emplace_back(grid, i == j ? 1.0 : 0.0);
  return HermitianMetricField(grid, std::move(g));
}

HermitianMetricField HermitianMetricField::from_function(
    const PeriodicGrid& grid, const std::function<PointMatrix(const Coordinates&)>& fn) {
  const int n = grid.dim();
  std::vector<ScalarField> g(static_cast<std::size_t>(n * n), ScalarField(grid));
  for (std::size_t x = 0; x < grid.size(); ++x) store_at(g, n, x, fn(grid.coordinates(x)));
  return HermitianMetricField(grid, std::move(g));
}

ScalarField HermitianMetricField::determinant() const {
  ScalarField det(grid_);
  parallel_for(grid_.size(), [&](std::size_t x) { det[x] = at(x).determinant().real(); });
  return det;
}

ScalarField HermitianMetricField::log_det() const {
  const auto det = determinant();
  ScalarField out(grid_);
  for (std::size_t x = 0; x < det.size(); ++x) {
    if (!(det[x].real() > 0.0))
      throw PositivityError("non-positive determinant at grid point " + std::to_string(x), x);
    out[x] = std::log(det[x].real());
  }
  return out;
}

std::vector<ScalarField> HermitianMetricField::inverse() const {
  const int n = dim();
  std::vector<ScalarField> inv(g_.size(), ScalarField(grid_));
  parallel_for(grid_.size(), [&](std::size_t x) {
    const PointMatrix m = at(x);
    store_at(inv, n, x, adjugate(m) / m.determinant());
  });
  return inv;
}

FormField HermitianMetricField::kahler_form() const { return form_from_hermitian(grid_, g_); }

HermitianMetricField HermitianMetricField::conformal(const ScalarField& u) const {
  const auto factor = exp(u.real_part());
  std::vector<ScalarField> g = g_;
  for (auto& c : g) c *= factor;
  return HermitianMetricField(grid_, std::move(g));
}

HermitianMetricField HermitianMetricField::plus(const std::vector<ScalarField>& h) const {
  if (h.size() != g_.size()) throw InputError("perturbation block has the wrong size");
  std::vector<ScalarField> g = g_;
  for (std::size_t k = 0; k < g.size(); ++k) g[k] += h[k];
  return HermitianMetricField(grid_, std::move(g));
}

double HermitianMetricField::distance(const HermitianMetricField& other) const {
  double d = 0.0;
  for (std::size_t k = 0; k < g_.size(); ++k) d = std::max(d, (g_[k] - other.g_[k]).max_abs());
  return d;
}

}  // namespace hermweb
