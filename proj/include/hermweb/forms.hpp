#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hermweb/grid.hpp"

namespace hermweb {

/// Bitmask over holomorphic indices {0..n-1}; bit i set means dz_i (or dzbar_i) present.
using IndexMask = std::uint32_t;

/// Strictly increasing index tuples of length k from {0..n-1}, in lexicographic order.
std::vector<IndexMask> index_sets(int n, int k);

/// Sign of the permutation sorting the concatenation (indices of a, indices of b);
/// zero when the sets overlap.
int merge_sign(IndexMask a, IndexMask b);

/// A (p,q)-form on the torus grid.
///
/// The stored coefficient c_{I,J} multiplies dz_I ^ dzbar_J, with I and J
/// increasing and all holomorphic differentials written first. Components are
/// ordered lexicographically in I, then in J.
class FormField {
 public:
  FormField(PeriodicGrid grid, int p, int q);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  int dim() const noexcept { return grid_.dim(); }
  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }

  std::size_t component_count() const noexcept { return coeffs_.size(); }
  ScalarField& component(std::size_t k) { return coeffs_.at(k); }
  const ScalarField& component(std::size_t k) const { return coeffs_.at(k); }
  /// (I, J) masks of the k-th stored component.
  std::pair<IndexMask, IndexMask> masks(std::size_t k) const;

  ScalarField& coeff(IndexMask holo, IndexMask anti);
  const ScalarField& coeff(IndexMask holo, IndexMask anti) const;
  /// Coefficient of dz_i ^ dzbar_j for a (1,1)-form.
  ScalarField& coeff11(int i, int j) { return coeff(IndexMask{1} << i, IndexMask{1} << j); }
  const ScalarField& coeff11(int i, int j) const {
    return coeff(IndexMask{1} << i, IndexMask{1} << j);
  }

  FormField& operator+=(const FormField& other);
  FormField& operator-=(const FormField& other);
  FormField& operator*=(complex s);

  /// Max over components and points of |coefficient|.
  double max_abs() const;

 private:
  std::size_t position(IndexMask holo, IndexMask anti) const;

  PeriodicGrid grid_;
  int p_;
  int q_;
  std::vector<IndexMask> holo_sets_;
  std::vector<IndexMask> anti_sets_;
  std::vector<ScalarField> coeffs_;
};

FormField operator+(FormField a, const FormField& b);
FormField operator-(FormField a, const FormField& b);
FormField operator*(complex s, FormField a);

/// Exterior product; wedge(a, b) = (-1)^{deg a deg b} wedge(b, a).
FormField wedge(const FormField& a, const FormField& b);

/// k-fold wedge power of a form (k >= 1).
FormField power(const FormField& a, int k);

struct ExteriorDerivative {
  FormField del;     ///< d' a, bidegree (p+1, q)
  FormField delbar;  ///< d'' a, bidegree (p, q+1)
};

/// Both halves of d = d' + d'' computed spectrally. Components that would
/// exceed degree n come back as empty (zero-component) forms.
ExteriorDerivative exterior_d(const FormField& a);
FormField del(const FormField& a);
FormField delbar(const FormField& a);

/// Max-norm of d a = del a + delbar a.
double d_norm(const FormField& a);

/// Complex conjugate form, bidegree (q, p).
FormField conjugate(const FormField& a);

/// sqrt(-1) d d-bar f, coefficients sqrt(-1) f_{z_i zbar_j}.
FormField ddbar(const ScalarField& f);

/// sqrt(-1) sum h_ij dz_i ^ dzbar_j from a row-major n x n block of fields.
FormField form_from_hermitian(const PeriodicGrid& grid, const std::vector<ScalarField>& h);

/// The row-major matrix h with a = sqrt(-1) sum h_ij dz_i ^ dzbar_j.
std::vector<ScalarField> hermitian_coefficients(const FormField& a);

/// Largest violation of h_ij = conj(h_ji) for a (1,1)-form.
double reality_defect(const FormField& a);

}  // namespace hermweb
