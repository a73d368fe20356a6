#pragma once

#include <vector>

#include "hermweb/forms.hpp"
#include "hermweb/metric.hpp"

namespace hermweb {

/// Chern-Ricci form Ric = -sqrt(-1) d d-bar log det g.
/// Throws PositivityError if det g <= 0 anywhere.
FormField chern_ricci(const HermitianMetricField& g);

/// Max-norm over points and entries of the Hermitian matrix of Ric(g).
double ricci_norm(const HermitianMetricField& g);

/// Mean-zero real F with sqrt(-1) d d-bar F = Ric(g): F = -(log det g - mean).
ScalarField ricci_potential(const HermitianMetricField& g);

/// e^{F/n} g with F = ricci_potential(g); Chern-Ricci flat with constant determinant.
HermitianMetricField conformal_flatten(const HermitianMetricField& g);

/// Coefficients Gamma^k_{ij} = g^{k lbar} d_i g_{j lbar} of the Chern connection.
class ChernConnectionField {
 public:
  ChernConnectionField(int n, std::vector<ScalarField> gamma)
      : n_(n), gamma_(std::move(gamma)) {}

  int dim() const noexcept { return n_; }
  /// Gamma^k_{ij}
  const ScalarField& operator()(int k, int i, int j) const {
    return gamma_[static_cast<std::size_t>((k * n_ + i) * n_ + j)];
  }
  double max_abs() const;

 private:
  int n_;
  std::vector<ScalarField> gamma_;
};

ChernConnectionField chern_connection(const HermitianMetricField& g);

/// Both sides of the Bochner identity for eta = (dz_1 ^ ... ^ dz_n)^{(x) l}:
///   Laplacian |eta|^2 = |nabla eta|^2 + l g^{i jbar} R_{i jbar} |eta|^2,
/// with |eta|^2 = (det g)^{-l}, the Laplacian g^{i jbar} d_i d_jbar evaluated
/// spectrally on |eta|^2, and nabla eta = -l (sum_i Gamma^j_{ij} dz_i) (x) eta
/// taken from the Chern connection.
struct BochnerReport {
  int power = 0;
  double identity_residual = 0.0;  ///< max |lhs - rhs|
  double lhs_max = 0.0;            ///< max |Laplacian |eta|^2|, for scale
  double max_nabla_eta = 0.0;      ///< max |nabla eta| (pointwise norm)
};

/// Throws InputError when power == 0.
BochnerReport parallel_section_check(const HermitianMetricField& g, int power);

/// Mean of the Hermitian coefficient matrix of a closed real (1,1)-form: zero
/// exactly when the form is sqrt(-1) d d-bar exact on the torus grid.
/// Throws InputError when |d a| exceeds `closed_tol`.
PointMatrix bott_chern_defect(const FormField& a, double closed_tol = 1e-8);

}  // namespace hermweb
