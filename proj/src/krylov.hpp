#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace hermweb::detail {

struct GmresResult {
  int iterations = 0;
  double relative_residual = 1.0;
  bool converged = false;
};

using LinearMap = std::function<void(std::span<const double>, std::span<double>)>;

// Restarted GMRES(m) with modified Gram-Schmidt and Givens rotations. Solves
// op(x) = rhs starting from x (in/out); stops when |rhs - op(x)| <= rtol |rhs|.
inline GmresResult gmres(const LinearMap& op, std::span<const double> rhs, std::span<double> x,
                         double rtol, int max_iterations, int restart) {
  const std::size_t n = rhs.size();
  auto dot = [n](std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };
  auto norm = [&](std::span<const double> a) { return std::sqrt(dot(a, a)); };

  GmresResult result;
  const double rhs_norm = norm(rhs);
  if (rhs_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    result.relative_residual = 0.0;
    result.converged = true;
    return result;
  }

  const auto m = static_cast<std::size_t>(restart);
  std::vector<std::vector<double>> basis(m + 1, std::vector<double>(n));
  std::vector<std::vector<double>> hess(m + 1, std::vector<double>(m, 0.0));
  std::vector<double> cs(m), sn(m), g(m + 1), w(n);

  while (result.iterations < max_iterations) {
    op(x, w);
    auto& v0 = basis[0];
    for (std::size_t i = 0; i < n; ++i) v0[i] = rhs[i] - w[i];
    double beta = norm(v0);
    result.relative_residual = beta / rhs_norm;
    if (result.relative_residual <= rtol) {
      result.converged = true;
      return result;
    }
    for (auto& v : v0) v /= beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    std::size_t k = 0;
    for (; k < m && result.iterations < max_iterations; ++k) {
      ++result.iterations;
      op(basis[k], w);
      for (std::size_t j = 0; j <= k; ++j) {
        hess[j][k] = dot(w, basis[j]);
        for (std::size_t i = 0; i < n; ++i) w[i] -= hess[j][k] * basis[j][i];
      }
      hess[k + 1][k] = norm(w);
      if (hess[k + 1][k] > 0.0)
        for (std::size_t i = 0; i < n; ++i) basis[k + 1][i] = w[i] / hess[k + 1][k];
      for (std::size_t j = 0; j < k; ++j) {
        const double t = cs[j] * hess[j][k] + sn[j] * hess[j + 1][k];
        hess[j + 1][k] = -sn[j] * hess[j][k] + cs[j] * hess[j + 1][k];
        hess[j][k] = t;
      }
      const double r = std::hypot(hess[k][k], hess[k + 1][k]);
      cs[k] = r > 0.0 ? hess[k][k] / r : 1.0;
      sn[k] = r > 0.0 ? hess[k + 1][k] / r : 0.0;
      hess[k][k] = r;
      hess[k + 1][k] = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      result.relative_residual = std::abs(g[k + 1]) / rhs_norm;
      if (result.relative_residual <= rtol || r == 0.0) {
        ++k;
        break;
      }
    }
    // Back substitution for the k Krylov coefficients, then update x.
    std::vector<double> y(k);
    for (std::size_t i = k; i-- > 0;) {
      double s = g[i];
      for (std::size_t j = i + 1; j < k; ++j) s -= hess[i][j] * y[j];
      y[i] = hess[i][i] != 0.0 ? s / hess[i][i] : 0.0;
    }
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) x[i] += y[j] * basis[j][i];
    if (result.relative_residual <= rtol) {
      // Confirm with the true residual; restarts if rounding fooled the recurrence.
      op(x, w);
      double true_res = 0.0;
      for (std::size_t i = 0; i < n; ++i) true_res += (rhs[i] - w[i]) * (rhs[i] - w[i]);
      result.relative_residual = std::sqrt(true_res) / rhs_norm;
      if (result.relative_residual <= 10.0 * rtol) {
        result.converged = true;
        return result;
      }
    }
  }
  return result;
}

}  // namespace hermweb::detail
