#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hermweb/error.hpp"
#include "hermweb/forms.hpp"
#include "hermweb/metric.hpp"

namespace hermweb {

// ---------------------------------------------------------------------------
// (n-1, n-1)-forms as Hermitian matrices
//
// For a positive (1,1)-form with matrix G, omega_G^{n-1} corresponds to the
// adjugate adj(G) = det(G) G^{-1}. The map below fixes that correspondence
// for arbitrary (n-1, n-1)-forms: it is linear, and sends omega_G^{n-1} to
// adj(G) exactly.

/// Row-major block Lambda representing an (n-1, n-1)-form.
std::vector<ScalarField> adjugate_block(const FormField& form);
/// Inverse of adjugate_block.
FormField form_from_adjugate_block(const PeriodicGrid& grid, const std::vector<ScalarField>& block);

/// Matrix of omega_H ^ omega_0^{n-2} under the adjugate correspondence
/// (n = 2: adj(H); n = 3: the polarized adjugate of H and G0).
PointMatrix mixed_adjugate(const PointMatrix& h, const PointMatrix& g0);

/// Pointwise (n-1)-th root: the metric G = (det Lambda)^{1/(n-1)} Lambda^{-1}
/// whose (n-1)-th power is the given form. Throws PositivityError when
/// Lambda is not positive definite somewhere.
HermitianMetricField hodge_root(const FormField& form);
HermitianMetricField hodge_root_block(const PeriodicGrid& grid, const std::vector<ScalarField>& lambda);

// ---------------------------------------------------------------------------
// Newton solvers

struct SolverConfig {
  double tolerance = 1e-10;       ///< max-norm of the equation residual
  int max_iterations = 40;
  int max_backtracks = 30;
  double backtrack_factor = 0.5;
  double linear_tolerance = 1e-2; ///< upper bound on the inexact-Newton forcing term
  int linear_max_iterations = 600;
  int gmres_restart = 80;

  /// Throws InputError when a field is out of range.
  void validate() const;
};

struct NewtonRecord {
  int iteration = 0;
  double residual = 0.0;  ///< max |omega~^n / omega^n - e^{F+b}|
  double b = 0.0;
  double step = 0.0;      ///< accepted line-search length (0 for the initial state)
  int linear_iterations = 0;
};

struct MASolution {
  ScalarField phi;  ///< real, mean-zero potential
  double b = 0.0;
  std::vector<NewtonRecord> history;
  HermitianMetricField metric_out;

  double residual() const { return history.empty() ? 0.0 : history.back().residual; }
  int iterations() const { return history.empty() ? 0 : history.back().iteration; }
};

/// Thrown when a solve cannot reach the configured tolerance. Carries the
/// residual history and the last accepted iterate.
class SolverFailure : public Error {
 public:
  enum class Reason { MaxIterations, PositivityLost, Stagnated };

  SolverFailure(Reason reason, const std::string& what, std::vector<NewtonRecord> history,
                ScalarField last_phi, double last_b)
      : Error(what),
        reason_(reason),
        history_(std::move(history)),
        last_phi_(std::move(last_phi)),
        last_b_(last_b) {}

  Reason reason() const noexcept { return reason_; }
  const std::vector<NewtonRecord>& history() const noexcept { return history_; }
  const ScalarField& last_phi() const noexcept { return last_phi_; }
  double last_b() const noexcept { return last_b_; }

 private:
  Reason reason_;
  std::vector<NewtonRecord> history_;
  ScalarField last_phi_;
  double last_b_;
};

/// Solves (omega + sqrt(-1) d d-bar phi)^n = e^{F+b} omega^n for mean-zero phi and b.
MASolution solve_ma2(const HermitianMetricField& g, const ScalarField& F, const SolverConfig& cfg,
                     const std::optional<ScalarField>& initial = std::nullopt);

/// Solves omega~^n = e^{F+b} omega^n with
///   omega~^{n-1} = omega^{n-1} + sqrt(-1) d d-bar phi ^ omega_0^{n-2}
/// for a Kähler reference omega_0. Requires n = 3.
MASolution solve_ma3(const HermitianMetricField& g, const HermitianMetricField& g0,
                     const ScalarField& F, const SolverConfig& cfg,
                     const std::optional<ScalarField>& initial = std::nullopt);

using MASolver = std::function<MASolution(const ScalarField& initial)>;

/// Runs `solver` from two initial guesses and returns max |phi_a - phi_b|
/// after mean-zero normalization. Solver failures propagate.
double uniqueness_probe(const MASolver& solver, const ScalarField& guess_a,
                        const ScalarField& guess_b);

/// Volume form ratio omega~^n / omega^n of a solution (for residual re-verification).
ScalarField volume_ratio(const HermitianMetricField& out, const HermitianMetricField& g);

}  // namespace hermweb
