#include "hermweb/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "hermweb/error.hpp"

namespace hermweb {

FormField chern_ricci(const HermitianMetricField& g) {
  return complex(-1.0) * ddbar(g.log_det());
}

double ricci_norm(const HermitianMetricField& g) { return chern_ricci(g).max_abs(); }

ScalarField ricci_potential(const HermitianMetricField& g) {
  auto L = g.log_det();
  L += -mean(L).real();
  return -L;
}

HermitianMetricField conformal_flatten(const HermitianMetricField& g) {
  const int n = g.dim();
  return g.conformal((1.0 / n) * ricci_potential(g));
}

double ChernConnectionField::max_abs() const {
  double m = 0.0;
  for (const auto& c : gamma_) m = std::max(m, c.max_abs());
  return m;
}

ChernConnectionField chern_connection(const HermitianMetricField& g) {
  const int n = g.dim();
  const auto& grid = g.grid();
  const auto inv = g.inverse();
  // dg[i][j][l] = d_i g_{j lbar}
  std::vector<ScalarField> dg;
  dg.reserve(static_cast<std::size_t>(n * n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) dg.push_back(partial(g(j, l), i));

  std::vector<ScalarField> gamma(static_cast<std::size_t>(n * n * n), ScalarField(grid));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto& out = gamma[static_cast<std::size_t>((k * n + i) * n + j)];
        for (int l = 0; l < n; ++l) {
          // g^{k lbar} is entry (l, k) of the inverse matrix.
          const auto& ginv = inv[static_cast<std::size_t>(l * n + k)];
          const auto& d = dg[static_cast<std::size_t>((i * n + j) * n + l)];
          for (std::size_t x = 0; x < grid.size(); ++x) out[x] += ginv[x] * d[x];
        }
      }
  return ChernConnectionField(n, std::move(gamma));
}

BochnerReport parallel_section_check(const HermitianMetricField& g, int power) {
  if (power == 0) throw InputError("power l must be nonzero");
  const int n = g.dim();
  const auto& grid = g.grid();
  const double l = power;
  const auto inv = g.inverse();

  // Left side: complex Laplacian of |eta|^2 = (det g)^{-l}.
  const auto norm2 = exp(-l * g.log_det());
  const auto hess = complex_hessian(norm2);

  // Right side: trace of the connection gives nabla eta; Ric gives the curvature term.
  const auto gamma = chern_connection(g);
  const auto ric = hermitian_coefficients(chern_ricci(g));

  BochnerReport report;
  report.power = power;
  for (std::size_t x = 0; x < grid.size(); ++x) {
    const PointMatrix ginv = matrix_at(inv, n, x);
    const PointMatrix h = matrix_at(hess, n, x);
    const PointMatrix r = matrix_at(ric, n, x);
    std::vector<complex> a(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)] += gamma(j, i, j)[x];

    complex lap = 0.0, grad2 = 0.0, curv = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const complex gij = ginv(j, i);  // g^{i jbar}
        lap += gij * h(i, j);
        grad2 += gij * a[static_cast<std::size_t>(i)] * std::conj(a[static_cast<std::size_t>(j)]);
        curv += gij * r(i, j);
      }
    const double eta2 = norm2[x].real();
    grad2 *= l * l * eta2;
    const complex rhs = grad2 + l * curv * eta2;
    report.identity_residual = std::max(report.identity_residual, std::abs(lap - rhs));
    report.lhs_max = std::max(report.lhs_max, std::abs(lap));
    report.max_nabla_eta = std::max(report.max_nabla_eta, std::sqrt(std::abs(grad2)));
  }
  return report;
}

PointMatrix bott_chern_defect(const FormField& a, double closed_tol) {
  if (a.p() != 1 || a.q() != 1) throw InputError("Bott-Chern defect needs a (1,1)-form");
  if (const double d = d_norm(a); d > closed_tol)
    throw InputError("form is not closed: |d a| = " + std::to_string(d));
  const int n = a.dim();
  const auto h = hermitian_coefficients(a);
  PointMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = mean(h[static_cast<std::size_t>(i * n + j)]);
  return m;
}

}  // namespace hermweb
