#include "hermweb/classify.hpp"

#include <algorithm>

#include "hermweb/error.hpp"
#include "hermweb/forms.hpp"

namespace hermweb {

double del_exactness_defect(const FormField& target) {
  const auto& grid = target.grid();
  const int n = target.dim();
  const int p = target.p();
  const std::size_t rows = target.component_count();
  if (rows == 0) return 0.0;

  FormField beta_shape(grid, std::max(p - 1, 0), target.q());
  const std::size_t cols = p >= 1 ? beta_shape.component_count() : 0;

  std::vector<std::vector<complex>> spectra;
  spectra.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) spectra.push_back(to_spectrum(target.component(r)));

  std::vector<std::vector<complex>> residual(rows, std::vector<complex>(grid.size()));
  using Matrix = Eigen::MatrixXcd;
  using Vector = Eigen::VectorXcd;
  Matrix a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  Vector t(static_cast<Eigen::Index>(rows));
  for (std::size_t m = 0; m < grid.size(); ++m) {
    a.setZero();
    for (std::size_t c = 0; c < cols; ++c) {
      const auto [bi, bj] = beta_shape.masks(c);
      for (int k = 0; k < n; ++k) {
        const IndexMask bit = IndexMask{1} << k;
        const int s = merge_sign(bit, bi);
        if (s == 0) continue;
        for (std::size_t r = 0; r < rows; ++r) {
          const auto [ti, tj] = target.masks(r);
          if (ti == (bi | bit) && tj == bj)
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
                static_cast<double>(s) * partial_symbol(grid, m, k);
        }
      }
    }
    for (std::size_t r = 0; r < rows; ++r) t(static_cast<Eigen::Index>(r)) = spectra[r][m];
    Vector res = t;
    if (cols > 0 && a.norm() > 0.0) {
      const Vector b = a.completeOrthogonalDecomposition().solve(t);
      res = t - a * b;
    }
    for (std::size_t r = 0; r < rows; ++r) residual[r][m] = res(static_cast<Eigen::Index>(r));
  }

  double worst = 0.0;
  for (auto& r : residual) worst = std::max(worst, from_spectrum(grid, std::move(r)).max_abs());
  return worst;
}

ClassReport classify(const HermitianMetricField& g, double tol) {
  if (!(tol > 0.0)) throw InputError("classification tolerance must be positive");
  const int n = g.dim();
  const auto omega = g.kahler_form();
  const auto top = power(omega, n - 1);
  const auto d_top = exterior_d(top);

  ClassReport rep;
  rep.tolerance = tol;
  rep.kahler_residual = d_norm(omega);
  rep.balanced_residual = std::max(d_top.del.max_abs(), d_top.delbar.max_abs());
  rep.gauduchon_residual = del(d_top.delbar).max_abs();
  rep.strongly_gauduchon_defect = del_exactness_defect(d_top.delbar);
  if (n >= 3) {
    rep.astheno_kahler_residual = del(delbar(power(omega, n - 2))).max_abs();
  } else {
    rep.astheno_kahler_vacuous = true;
  }

  rep.kahler = rep.kahler_residual <= tol;
  rep.balanced = rep.kahler || rep.balanced_residual <= tol;
  rep.gauduchon = rep.kahler || rep.gauduchon_residual <= tol;
  rep.strongly_gauduchon = rep.kahler || rep.strongly_gauduchon_defect <= tol;
  rep.astheno_kahler =
      rep.astheno_kahler_vacuous || rep.kahler || rep.astheno_kahler_residual <= tol;
  return rep;
}

}  // namespace hermweb
