#include "hermweb/forms.hpp"

#include <algorithm>
#include <bit>

#include "hermweb/error.hpp"

namespace hermweb {

std::vector<IndexMask> index_sets(int n, int k) {
  std::vector<IndexMask> out;
  if (k < 0 || k > n) return out;
  std::vector<int> tuple(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) tuple[static_cast<std::size_t>(i)] = i;
  while (true) {
    IndexMask m = 0;
    for (int v : tuple) m |= IndexMask{1} << v;
    out.push_back(m);
    int pos = k - 1;
    while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++tuple[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i)
      tuple[static_cast<std::size_t>(i)] = tuple[static_cast<std::size_t>(i - 1)] + 1;
  }
  return out;
}

int merge_sign(IndexMask a, IndexMask b) {
  if (a & b) return 0;
  int inversions = 0;
  for (IndexMask rest = a; rest; rest &= rest - 1) {
    const int i = std::countr_zero(rest);
    const IndexMask below = (IndexMask{1} << i) - 1;
    inversions += std::popcount(b & below);
  }
  return (inversions % 2) ? -1 : 1;
}

FormField::FormField(PeriodicGrid grid, int p, int q)
    : grid_(std::move(grid)), p_(p), q_(q) {
  const int n = grid_.dim();
  if (p < 0 || q < 0 || p > n + 1 || q > n + 1)
    throw InputError("invalid bidegree (" + std::to_string(p) + "," + std::to_string(q) + ")");
  holo_sets_ = index_sets(n, p);
  anti_sets_ = index_sets(n, q);
  coeffs_.assign(holo_sets_.size() * anti_sets_.size(), ScalarField(grid_));
}

std::pair<IndexMask, IndexMask> FormField::masks(std::size_t k) const {
  return {holo_sets_.at(k / anti_sets_.size()), anti_sets_.at(k % anti_sets_.size())};
}

std::size_t FormField::position(IndexMask holo, IndexMask anti) const {
  const auto hi = std::find(holo_sets_.begin(), holo_sets_.end(), holo);
  const auto ai = std::find(anti_sets_.begin(), anti_sets_.end(), anti);
  if (hi == holo_sets_.end() || ai == anti_sets_.end())
    throw InputError("multi-index does not match the form's bidegree");
  return static_cast<std::size_t>(hi - holo_sets_.begin()) * anti_sets_.size() +
         static_cast<std::size_t>(ai - anti_sets_.begin());
}

ScalarField& FormField::coeff(IndexMask holo, IndexMask anti) {
  return coeffs_[position(holo, anti)];
}

const ScalarField& FormField::coeff(IndexMask holo, IndexMask anti) const {
  return coeffs_[position(holo, anti)];
}

namespace {
void require_compatible(const FormField& a, const FormField& b) {
  if (a.p() != b.p() || a.q() != b.q() || !(a.grid() == b.grid()))
    throw InputError("forms differ in bidegree or grid");
}
}  // namespace

FormField& FormField::operator+=(const FormField& other) {
  require_compatible(*this, other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

FormField& FormField::operator-=(const FormField& other) {
  require_compatible(*this, other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

FormField& FormField::operator*=(complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

double FormField::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, c.max_abs());
  return m;
}

FormField operator+(FormField a, const FormField& b) { return a += b; }
FormField operator-(FormField a, const FormField& b) { return a -= b; }
FormField operator*(complex s, FormField a) { return a *= s; }

FormField wedge(const FormField& a, const FormField& b) {
  if (!(a.grid() == b.grid())) throw InputError("wedge of forms on different grids");
  const int n = a.dim();
  if (a.p() + b.p() > n || a.q() + b.q() > n)
    throw InputError("wedge degree overflow: (" + std::to_string(a.p() + b.p()) + "," +
                     std::to_string(a.q() + b.q()) + ") exceeds n=" + std::to_string(n));
  FormField out(a.grid(), a.p() + b.p(), a.q() + b.q());
  // Moving dz_K past dzbar_J.
  const int cross = ((a.q() * b.p()) % 2) ? -1 : 1;
  for (std::size_t ka = 0; ka < a.component_count(); ++ka) {
    const auto [ia, ja] = a.masks(ka);
    for (std::size_t kb = 0; kb < b.component_count(); ++kb) {
      const auto [ib, jb] = b.masks(kb);
      const int s = cross * merge_sign(ia, ib) * merge_sign(ja, jb);
      if (s == 0) continue;
      auto& target = out.coeff(ia | ib, ja | jb);
      const auto& ca = a.component(ka);
      const auto& cb = b.component(kb);
      for (std::size_t x = 0; x < target.size(); ++x)
        target[x] += static_cast<double>(s) * ca[x] * cb[x];
    }
  }
  return out;
}

FormField power(const FormField& a, int k) {
  if (k < 1) throw InputError("wedge power must be >= 1");
  FormField out = a;
  for (int i = 1; i < k; ++i) out = wedge(out, a);
  return out;
}

ExteriorDerivative exterior_d(const FormField& a) {
  const auto& grid = a.grid();
  const int n = a.dim();
  ExteriorDerivative d{FormField(grid, std::min(a.p() + 1, n + 1), a.q()),
                       FormField(grid, a.p(), std::min(a.q() + 1, n + 1))};
  const int holo_parity = (a.p() % 2) ? -1 : 1;
  for (std::size_t c = 0; c < a.component_count(); ++c) {
    const auto [holo, anti] = a.masks(c);
    const auto spec = to_spectrum(a.component(c));
    for (int k = 0; k < n; ++k) {
      const IndexMask bit = IndexMask{1} << k;
      if (const int s = merge_sign(bit, holo); s != 0 && a.p() < n) {
        std::vector<complex> t(spec.size());
        for (std::size_t m = 0; m < spec.size(); ++m) t[m] = spec[m] * partial_symbol(grid, m, k);
        d.del.coeff(holo | bit, anti) += static_cast<double>(s) * from_spectrum(grid, std::move(t));
      }
      if (const int s = merge_sign(bit, anti); s != 0 && a.q() < n) {
        std::vector<complex> t(spec.size());
        for (std::size_t m = 0; m < spec.size(); ++m)
          t[m] = spec[m] * partial_bar_symbol(grid, m, k);
        d.delbar.coeff(holo, anti | bit) +=
            static_cast<double>(s * holo_parity) * from_spectrum(grid, std::move(t));
      }
    }
  }
  return d;
}

FormField del(const FormField& a) { return exterior_d(a).del; }
FormField delbar(const FormField& a) { return exterior_d(a).delbar; }

double d_norm(const FormField& a) {
  // del a and delbar a have different bidegrees, so |d a| is the larger of the two.
  const auto d = exterior_d(a);
  return std::max(d.del.max_abs(), d.delbar.max_abs());
}

FormField conjugate(const FormField& a) {
  FormField out(a.grid(), a.q(), a.p());
  const double s = ((a.p() * a.q()) % 2) ? -1.0 : 1.0;
  for (std::size_t c = 0; c < a.component_count(); ++c) {
    const auto [holo, anti] = a.masks(c);
    out.coeff(anti, holo) = s * a.component(c).conj();
  }
  return out;
}

FormField ddbar(const ScalarField& f) {
  const int n = f.grid().dim();
  const auto h = complex_hessian(f);
  FormField out(f.grid(), 1, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.coeff11(i, j) = kI * h[static_cast<std::size_t>(i * n + j)];
  return out;
}

FormField form_from_hermitian(const PeriodicGrid& grid, const std::vector<ScalarField>& h) {
  const int n = grid.dim();
  if (h.size() != static_cast<std::size_t>(n * n))
    throw InputError("expected an n x n block of coefficient fields");
  FormField out(grid, 1, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.coeff11(i, j) = kI * h[static_cast<std::size_t>(i * n + j)];
  return out;
}

std::vector<ScalarField> hermitian_coefficients(const FormField& a) {
  if (a.p() != 1 || a.q() != 1) throw InputError("expected a (1,1)-form");
  const int n = a.dim();
  std::vector<ScalarField> h;
  h.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h.push_back(-kI * a.coeff11(i, j));
  return h;
}

double reality_defect(const FormField& a) {
  const auto h = hermitian_coefficients(a);
  const int n = a.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const auto& hij = h[static_cast<std::size_t>(i * n + j)];
      const auto& hji = h[static_cast<std::size_t>(j * n + i)];
      for (std::size_t x = 0; x < hij.size(); ++x)
        worst = std::max(worst, std::abs(hij[x] - std::conj(hji[x])));
    }
  return worst;
}

}  // namespace hermweb
