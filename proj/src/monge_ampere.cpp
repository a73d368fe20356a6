#include "hermweb/monge_ampere.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "hermweb/classify.hpp"
#include "hermweb/parallel.hpp"
#include "krylov.hpp"

namespace hermweb {

namespace {

// Coefficient of the (n-1, n-1) basis element sqrt(-1)^k dz_a1 ^ dzbar_b1 ^ ...
// (interleaved) re-expressed in separated storage, times k! from the power.
complex adjugate_normalization(int n) {
  const int k = n - 1;
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  complex ik = 1.0;
  for (int i = 0; i < k; ++i) ik *= kI;
  const double reorder = ((k * (k - 1) / 2) % 2) ? -1.0 : 1.0;
  return factorial * reorder * ik;
}

double sign_of(int i, int j) { return ((i + j) % 2) ? -1.0 : 1.0; }

}  // namespace

std::vector<ScalarField> adjugate_block(const FormField& form) {
  const int n = form.dim();
  if (form.p() != n - 1 || form.q() != n - 1)
    throw InputError("expected an (n-1,n-1)-form");
  const IndexMask full = (IndexMask{1} << n) - 1;
  const complex norm = adjugate_normalization(n);
  std::vector<ScalarField> block(static_cast<std::size_t>(n * n), ScalarField(form.grid()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& c = form.coeff(full ^ (IndexMask{1} << i), full ^ (IndexMask{1} << j));
      block[static_cast<std::size_t>(j * n + i)] = (sign_of(i, j) / norm) * c;
    }
  return block;
}

FormField form_from_adjugate_block(const PeriodicGrid& grid,
                                   const std::vector<ScalarField>& block) {
  const int n = grid.dim();
  if (block.size() != static_cast<std::size_t>(n * n))
    throw InputError("expected an n x n block of fields");
  const IndexMask full = (IndexMask{1} << n) - 1;
  const complex norm = adjugate_normalization(n);
  FormField form(grid, n - 1, n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      form.coeff(full ^ (IndexMask{1} << i), full ^ (IndexMask{1} << j)) =
          (sign_of(i, j) * norm) * block[static_cast<std::size_t>(j * n + i)];
  return form;
}

PointMatrix mixed_adjugate(const PointMatrix& h, const PointMatrix& g0) {
  if (h.rows() == 2) return adjugate(h);
  if (h.rows() == 3) {
    const PointMatrix sum = h + g0;
    return 0.5 * (adjugate(sum) - adjugate(h) - adjugate(g0));
  }
  throw InputError("mixed adjugate is defined for n = 2, 3");
}

HermitianMetricField hodge_root_block(const PeriodicGrid& grid,
                                      const std::vector<ScalarField>& lambda) {
  const int n = grid.dim();
  std::vector<ScalarField> g(lambda.size(), ScalarField(grid));
  const double root = 1.0 / (n - 1);
  for (std::size_t x = 0; x < grid.size(); ++x) {
    const PointMatrix l = matrix_at(lambda, n, x);
    if (!leading_minors_positive(l))
      throw PositivityError("(n-1,n-1)-form is not positive at grid point " + std::to_string(x),
                            x);
    const double det = l.determinant().real();
    store_at(g, n, x, std::pow(det, root) * (adjugate(l) / det));
  }
  return HermitianMetricField(grid, std::move(g));
}

HermitianMetricField hodge_root(const FormField& form) {
  return hodge_root_block(form.grid(), adjugate_block(form));
}

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw InputError("solver tolerance must be positive");
  if (max_iterations < 1 || linear_max_iterations < 1 || gmres_restart < 1 || max_backtracks < 1)
    throw InputError("solver iteration caps must be >= 1");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
    throw InputError("backtrack factor must lie in (0, 1)");
  if (!(linear_tolerance > 0.0 && linear_tolerance < 1.0))
    throw InputError("linear tolerance must lie in (0, 1)");
}

ScalarField volume_ratio(const HermitianMetricField& out, const HermitianMetricField& g) {
  auto r = out.determinant();
  const auto d = g.determinant();
  for (std::size_t x = 0; x < r.size(); ++x) r[x] /= d[x];
  return r;
}

namespace {

// One Monge-Ampère-type equation log(omega~^n / omega^n) = F + b in the
// unknown phi, with omega~ depending on sqrt(-1) d d-bar phi.
class Problem {
 public:
  virtual ~Problem() = default;
  /// log(omega~^n / omega^n), or nullopt when omega~ is not positive.
  virtual std::optional<ScalarField> log_ratio(const ScalarField& phi) const = 0;
  /// Row-major A with linearized operator v -> sum_ij A_ij v_{i jbar}.
  virtual std::vector<ScalarField> linearization(const ScalarField& phi) const = 0;
  virtual HermitianMetricField metric(const ScalarField& phi) const = 0;
};

class ComplexMongeAmpere final : public Problem {
 public:
  explicit ComplexMongeAmpere(const HermitianMetricField& g) : g_(g), log_det_(g.log_det()) {}

  std::optional<ScalarField> log_ratio(const ScalarField& phi) const override {
    const auto block = perturbed(phi);
    const int n = g_.dim();
    ScalarField out(g_.grid());
    for (std::size_t x = 0; x < out.size(); ++x) {
      const PointMatrix m = matrix_at(block, n, x);
      if (!leading_minors_positive(m)) return std::nullopt;
      out[x] = std::log(m.determinant().real()) - log_det_[x].real();
    }
    return out;
  }

  std::vector<ScalarField> linearization(const ScalarField& phi) const override {
    const auto block = perturbed(phi);
    const int n = g_.dim();
    std::vector<ScalarField> a(block.size(), ScalarField(g_.grid()));
    parallel_for(g_.grid().size(), [&](std::size_t x) {
      const PointMatrix m = matrix_at(block, n, x);
      // trace(G~^{-1} H) = sum_ij (G~^{-1})_{ji} H_ij
      const PointMatrix inv = adjugate(m) / m.determinant();
      store_at(a, n, x, inv.transpose());
    });
    return a;
  }

  HermitianMetricField metric(const ScalarField& phi) const override {
    return HermitianMetricField(g_.grid(), perturbed(phi));
  }

 private:
  std::vector<ScalarField> perturbed(const ScalarField& phi) const {
    auto block = complex_hessian(phi);
    for (std::size_t k = 0; k < block.size(); ++k) block[k] += g_.components()[k];
    return block;
  }

  const HermitianMetricField& g_;
  ScalarField log_det_;
};

class FormTypeMongeAmpere final : public Problem {
 public:
  FormTypeMongeAmpere(const HermitianMetricField& g, const HermitianMetricField& g0)
      : g_(g), g0_(g0), log_det_(g.log_det()) {
    const int n = g.dim();
    adj_.assign(static_cast<std::size_t>(n * n), ScalarField(g.grid()));
    for (std::size_t x = 0; x < g.grid().size(); ++x) store_at(adj_, n, x, adjugate(g.at(x)));
  }

  std::optional<ScalarField> log_ratio(const ScalarField& phi) const override {
    const auto lam = lambda(phi);
    const int n = g_.dim();
    ScalarField out(g_.grid());
    for (std::size_t x = 0; x < out.size(); ++x) {
      const PointMatrix l = matrix_at(lam, n, x);
      if (!leading_minors_positive(l)) return std::nullopt;
      // det(omega~) = (det Lambda)^{1/(n-1)}
      out[x] = std::log(l.determinant().real()) / (n - 1) - log_det_[x].real();
    }
    return out;
  }

  std::vector<ScalarField> linearization(const ScalarField& phi) const override {
    const auto lam = lambda(phi);
    const int n = g_.dim();
    std::vector<ScalarField> a(lam.size(), ScalarField(g_.grid()));
    parallel_for(g_.grid().size(), [&](std::size_t x) {
      const PointMatrix l = matrix_at(lam, n, x);
      const PointMatrix linv = adjugate(l) / l.determinant();
      const PointMatrix g0 = g0_.at(x);
      PointMatrix coeff(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          PointMatrix e = PointMatrix::Zero(n, n);
          e(i, j) = 1.0;
          coeff(i, j) = (linv * mixed_adjugate(e, g0)).trace() / static_cast<double>(n - 1);
        }
      store_at(a, n, x, coeff);
    });
    return a;
  }

  HermitianMetricField metric(const ScalarField& phi) const override {
    return hodge_root_block(g_.grid(), lambda(phi));
  }

 private:
  std::vector<ScalarField> lambda(const ScalarField& phi) const {
    const int n = g_.dim();
    const auto h = complex_hessian(phi);
    auto lam = adj_;
    for (std::size_t x = 0; x < g_.grid().size(); ++x) {
      const PointMatrix m = matrix_at(lam, n, x) + mixed_adjugate(matrix_at(h, n, x), g0_.at(x));
      store_at(lam, n, x, m);
    }
    return lam;
  }

  const HermitianMetricField& g_;
  const HermitianMetricField& g0_;
  ScalarField log_det_;
  std::vector<ScalarField> adj_;
};

// Bordered linear system  L dphi - db = rhs  with mean(dphi) = 0, solved by
// right-preconditioned GMRES. The preconditioner inverts the constant
// coefficient operator built from the grid mean of A.
class BorderedSystem {
 public:
  BorderedSystem(const PeriodicGrid& grid, std::vector<ScalarField> a)
      : grid_(grid), a_(std::move(a)), symbol_inv_(grid.size(), 0.0) {
    const int n = grid.dim();
    PointMatrix abar(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) abar(i, j) = mean(a_[static_cast<std::size_t>(i * n + j)]);
    for (std::size_t m = 1; m < grid.size(); ++m) {
      complex s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          s += abar(i, j) * partial_symbol(grid, m, i) * partial_bar_symbol(grid, m, j);
      if (std::abs(s) > 1e-12) symbol_inv_[m] = 1.0 / s;
    }
  }

  // dphi = C^{-1}(y - mean y), db = -mean y
  void precondition(std::span<const double> y, std::span<double> dphi, double& db) const {
    double ybar = 0.0;
    for (double v : y) ybar += v;
    ybar /= static_cast<double>(y.size());
    std::vector<complex> s(y.begin(), y.end());
    ScalarField f(grid_, std::move(s));
    auto spec = to_spectrum(f);
    for (std::size_t m = 0; m < spec.size(); ++m) spec[m] *= symbol_inv_[m];
    const auto out = from_spectrum(grid_, std::move(spec));
    for (std::size_t x = 0; x < dphi.size(); ++x) dphi[x] = out[x].real();
    db = -ybar;
  }

  void apply(std::span<const double> dphi, double db, std::span<double> out) const {
    const int n = grid_.dim();
    std::vector<complex> s(dphi.begin(), dphi.end());
    const auto h = complex_hessian(ScalarField(grid_, std::move(s)));
    std::fill(out.begin(), out.end(), -db);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto& aij = a_[static_cast<std::size_t>(i * n + j)];
        const auto& hij = h[static_cast<std::size_t>(i * n + j)];
        for (std::size_t x = 0; x < out.size(); ++x) out[x] += (aij[x] * hij[x]).real();
      }
  }

  // Returns the GMRES iteration count; dphi/db hold the solution.
  detail::GmresResult solve(std::span<const double> rhs, std::vector<double>& dphi, double& db,
                            double rtol, const SolverConfig& cfg) const {
    const std::size_t npts = rhs.size();
    std::vector<double> tmp(npts);
    detail::LinearMap op = [&](std::span<const double> y, std::span<double> out) {
      double b = 0.0;
      precondition(y, tmp, b);
      apply(tmp, b, out);
    };
    std::vector<double> y(npts, 0.0);
    auto res = detail::gmres(op, rhs, y, rtol, cfg.linear_max_iterations, cfg.gmres_restart);
    dphi.assign(npts, 0.0);
    precondition(y, dphi, db);
    return res;
  }

 private:
  PeriodicGrid grid_;
  std::vector<ScalarField> a_;
  std::vector<complex> symbol_inv_;
};

double residual_norm(const ScalarField& log_ratio, const ScalarField& F, double b) {
  double worst = 0.0;
  for (std::size_t x = 0; x < F.size(); ++x)
    worst = std::max(worst, std::abs(std::exp(log_ratio[x].real()) -
                                     std::exp(F[x].real() + b)));
  return worst;
}

ScalarField normalized_guess(const PeriodicGrid& grid, const std::optional<ScalarField>& initial) {
  if (!initial) return ScalarField(grid);
  if (!(initial->grid() == grid)) throw InputError("initial guess lives on a different grid");
  auto phi = initial->real_part();
  phi += -mean(phi).real();
  return phi;
}

MASolution newton_solve(const Problem& problem, const HermitianMetricField& g,
                        const ScalarField& F_in, const SolverConfig& cfg,
                        const std::optional<ScalarField>& initial) {
  cfg.validate();
  const auto& grid = g.grid();
  if (!(F_in.grid() == grid)) throw InputError("F lives on a different grid");
  if (F_in.max_imag() > 1e-12) throw InputError("F must be real");
  const ScalarField F = F_in.real_part();
  const auto det = g.determinant();
  const std::size_t npts = grid.size();

  ScalarField phi = normalized_guess(grid, initial);
  auto q = problem.log_ratio(phi);
  if (!q)
    throw SolverFailure(SolverFailure::Reason::PositivityLost,
                        "initial guess does not give a positive metric", {}, phi, 0.0);

  // Compatibility: integral of omega~^n equals e^b times the integral of e^F omega^n.
  double vol_new = 0.0, vol_f = 0.0;
  for (std::size_t x = 0; x < npts; ++x) {
    vol_new += std::exp((*q)[x].real()) * det[x].real();
    vol_f += std::exp(F[x].real()) * det[x].real();
  }
  double b = std::log(vol_new) - std::log(vol_f);
  double res = residual_norm(*q, F, b);
  std::vector<NewtonRecord> history{{0, res, b, 0.0, 0}};

  for (int it = 1; res > cfg.tolerance; ++it) {
    if (it > cfg.max_iterations)
      throw SolverFailure(SolverFailure::Reason::MaxIterations,
                          "Newton iteration cap reached with residual " + std::to_string(res),
                          history, phi, b);

    std::vector<double> rhs(npts);
    double log_res = 0.0;
    for (std::size_t x = 0; x < npts; ++x) {
      rhs[x] = -((*q)[x].real() - F[x].real() - b);
      log_res = std::max(log_res, std::abs(rhs[x]));
    }
    const BorderedSystem system(grid, problem.linearization(phi));
    const double rtol = std::clamp(log_res, 1e-13, cfg.linear_tolerance);
    std::vector<double> dphi;
    double db = 0.0;
    const auto lin = system.solve(rhs, dphi, db, rtol, cfg);

    double step = 1.0;
    bool accepted = false;
    bool any_positive = false;
    for (int bt = 0; bt < cfg.max_backtracks; ++bt, step *= cfg.backtrack_factor) {
      ScalarField trial = phi;
      for (std::size_t x = 0; x < npts; ++x) trial[x] += step * dphi[x];
      trial += -mean(trial).real();
      auto q_trial = problem.log_ratio(trial);
      if (!q_trial) continue;
      any_positive = true;
      const double b_trial = b + step * db;
      const double res_trial = residual_norm(*q_trial, F, b_trial);
      if (res_trial < res) {
        phi = std::move(trial);
        q = std::move(q_trial);
        b = b_trial;
        res = res_trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      const auto reason =
          any_positive ? SolverFailure::Reason::Stagnated : SolverFailure::Reason::PositivityLost;
      throw SolverFailure(reason,
                          any_positive ? "line search could not reduce the residual " +
                                             std::to_string(res)
                                       : "positivity lost and not recovered by damping",
                          history, phi, b);
    }
    history.push_back({it, res, b, step, lin.iterations});
  }

  return MASolution{phi, b, std::move(history), problem.metric(phi)};
}

}  // namespace

MASolution solve_ma2(const HermitianMetricField& g, const ScalarField& F, const SolverConfig& cfg,
                     const std::optional<ScalarField>& initial) {
  const ComplexMongeAmpere problem(g);
  return newton_solve(problem, g, F, cfg, initial);
}

MASolution solve_ma3(const HermitianMetricField& g, const HermitianMetricField& g0,
                     const ScalarField& F, const SolverConfig& cfg,
                     const std::optional<ScalarField>& initial) {
  if (g.dim() != 3) throw InputError("the form-type equation is solved for n = 3");
  if (!(g0.grid() == g.grid())) throw InputError("reference metric lives on a different grid");
  const auto report = classify(g0, 1e-10);
  if (!report.kahler)
    throw InputError("reference metric is not Kähler: |d omega_0| = " +
                     std::to_string(report.kahler_residual));
  const FormTypeMongeAmpere problem(g, g0);
  return newton_solve(problem, g, F, cfg, initial);
}

double uniqueness_probe(const MASolver& solver, const ScalarField& guess_a,
                        const ScalarField& guess_b) {
  const auto a = solver(guess_a);
  const auto b = solver(guess_b);
  auto pa = a.phi.real_part();
  auto pb = b.phi.real_part();
  pa += -mean(pa).real();
  pb += -mean(pb).real();
  return (pa - pb).max_abs();
}

}  // namespace hermweb
