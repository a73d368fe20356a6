#include "hermweb/model_manifolds.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "hermweb/error.hpp"

namespace hermweb {

bool ExampleReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ExampleCheck& c) { return c.pass; });
}

const ExampleCheck& ExampleReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw InputError("no check named '" + name + "' in the " + example + " report");
}

namespace {

ExampleCheck at_most(std::string name, double value, double tol, std::string detail = {}) {
  return {std::move(name), {value}, {0.0}, tol, value <= tol, std::move(detail)};
}

ExampleCheck near(std::string name, std::vector<double> computed, std::vector<double> expected,
                  double tol, std::string detail = {}) {
  bool ok = computed.size() == expected.size();
  for (std::size_t k = 0; ok && k < computed.size(); ++k)
    ok = std::abs(computed[k] - expected[k]) <= tol;
  return {std::move(name), std::move(computed), std::move(expected), tol, ok, std::move(detail)};
}

double norm2(const HopfPoint& z) {
  double s = 0.0;
  for (auto c : z) s += std::norm(c);
  return s;
}

// log det g for g = I / |z|^2, evaluated on real coordinates (x1, y1, ...).
double hopf_log_det(const std::vector<double>& x, int n) {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n) / r2;
  return std::log(g.determinant());
}

double second_difference(const std::vector<double>& x0, int a, int b, double h, int n) {
  auto f = [&](double da, double db) {
    auto x = x0;
    x[static_cast<std::size_t>(a)] += da;
    x[static_cast<std::size_t>(b)] += db;
    return hopf_log_det(x, n);
  };
  if (a == b) {
    return (-f(2 * h, 0) + 16 * f(h, 0) - 30 * f(0, 0) + 16 * f(-h, 0) - f(-2 * h, 0)) /
           (12 * h * h);
  }
  static constexpr std::array<std::pair<int, double>, 4> w{
      {{1, 8.0}, {-1, -8.0}, {2, -1.0}, {-2, 1.0}}};
  double s = 0.0;
  for (auto [sa, wa] : w)
    for (auto [sb, wb] : w) s += wa * wb * f(sa * h, sb * h);
  return s / (144 * h * h);
}

}  // namespace

std::vector<complex> hopf_ricci_closed_form(const HopfPoint& z) {
  const int n = static_cast<int>(z.size());
  const double r2 = norm2(z);
  std::vector<complex> ric(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      ric[static_cast<std::size_t>(i * n + j)] =
          (n / r2) * ((i == j ? 1.0 : 0.0) - std::conj(z[static_cast<std::size_t>(i)]) *
                                                 z[static_cast<std::size_t>(j)] / r2);
  return ric;
}

std::vector<complex> hopf_ricci_finite_difference(const HopfPoint& z, double h) {
  const int n = static_cast<int>(z.size());
  std::vector<double> x(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(2 * i)] = z[static_cast<std::size_t>(i)].real();
    x[static_cast<std::size_t>(2 * i + 1)] = z[static_cast<std::size_t>(i)].imag();
  }
  std::vector<complex> ric(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double xx = second_difference(x, 2 * i, 2 * j, h, n);
      const double yy = second_difference(x, 2 * i + 1, 2 * j + 1, h, n);
      const double xy = second_difference(x, 2 * i, 2 * j + 1, h, n);
      const double yx = second_difference(x, 2 * i + 1, 2 * j, h, n);
      // Ric_{i jbar} = -d_i d_jbar log det g
      ric[static_cast<std::size_t>(i * n + j)] = -0.25 * complex(xx + yy, xy - yx);
    }
  return ric;
}

std::vector<HopfPoint> hopf_sample(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> radius(0.2, 3.0);
  std::vector<HopfPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    HopfPoint z(static_cast<std::size_t>(n));
    for (auto& c : z) c = {gauss(rng), gauss(rng)};
    const double scale = radius(rng) / std::sqrt(norm2(z));
    for (auto& c : z) c *= scale;
    out.push_back(std::move(z));
  }
  return out;
}

ExampleReport hopf_check(const std::vector<HopfPoint>& points, int n) {
  if (n < 2 || n > kMaxComplexDim) throw InputError("Hopf check supports n = 2, 3");
  if (points.empty()) throw InputError("Hopf check needs at least one point");
  for (const auto& z : points) {
    if (static_cast<int>(z.size()) != n) throw InputError("Hopf point has the wrong dimension");
    if (std::sqrt(norm2(z)) < 0.1) throw InputError("Hopf point too close to the origin");
  }

  double fd_err = 0.0, min_eig = INFINITY, worst_zero = 0.0, min_top_ratio = INFINITY;
  int rank_failures = 0;
  for (const auto& z : points) {
    const double r2 = norm2(z);
    const auto closed = hopf_ricci_closed_form(z);
    const auto fd = hopf_ricci_finite_difference(z, 1e-3 * std::sqrt(r2));
    for (std::size_t k = 0; k < closed.size(); ++k)
      fd_err = std::max(fd_err, std::abs(closed[k] - fd[k]));

    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = closed[static_cast<std::size_t>(i * n + j)];
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m).eigenvalues();
    min_eig = std::min(min_eig, ev.minCoeff());
    worst_zero = std::max(worst_zero, std::abs(ev.minCoeff()));
    min_top_ratio = std::min(min_top_ratio, ev.maxCoeff() * r2 / n);
    const double scale = n / r2;
    const auto positive = std::count_if(ev.data(), ev.data() + n,
                                        [&](double v) { return v > 1e-10 * scale; });
    if (positive != n - 1) ++rank_failures;
  }

  HopfPoint e1(static_cast<std::size_t>(n), 0.0);
  e1[0] = 1.0;
  std::vector<double> anchor, anchor_expected;
  for (auto c : hopf_ricci_closed_form(e1)) {
    anchor.push_back(c.real());
    anchor.push_back(c.imag());
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      anchor_expected.push_back(i == j && i > 0 ? n : 0.0);
      anchor_expected.push_back(0.0);
    }

  ExampleReport rep;
  rep.example = "hopf";
  rep.checks.push_back(at_most("closed_form_vs_finite_difference", fd_err, 1e-6,
                               std::to_string(points.size()) + " points"));
  rep.checks.push_back(
      {"positive_semidefinite", {min_eig}, {-1e-10}, 1e-10, min_eig >= -1e-10, "min eigenvalue"});
  rep.checks.push_back(at_most("zero_eigenvalue", worst_zero, 1e-10, "max |smallest eigenvalue|"));
  rep.checks.push_back({"top_eigenvalue",
                        {min_top_ratio},
                        {0.5},
                        0.0,
                        min_top_ratio >= 0.5,
                        "min over points of max eigenvalue * |z|^2 / n"});
  rep.checks.push_back({"rank_n_minus_1", {static_cast<double>(rank_failures)}, {0.0}, 0.0,
                        rank_failures == 0, "points where rank != n-1"});
  rep.checks.push_back(near("closed_form_at_e1", anchor, anchor_expected, 1e-12,
                            "row-major (re, im) entries at z = e1"));
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// Exterior algebra on dz1, dzbar1, dz2, dzbar2, dz3, dzbar3 (generator 2k is
// dz_{k+1}, 2k+1 its conjugate); basis monomials indexed by bitmask.
struct Grassmann6 {
  std::array<complex, 64> c{};

  static Grassmann6 generator(int k, complex coeff) {
    Grassmann6 g;
    g.c[std::size_t{1} << k] = coeff;
    return g;
  }
  Grassmann6& operator+=(const Grassmann6& o) {
    for (std::size_t k = 0; k < 64; ++k) c[k] += o.c[k];
    return *this;
  }
  friend Grassmann6 operator+(Grassmann6 a, const Grassmann6& b) { return a += b; }
  friend Grassmann6 operator*(complex s, Grassmann6 a) {
    for (auto& v : a.c) v *= s;
    return a;
  }
};

int reorder_sign(unsigned a, unsigned b) {
  int swaps = 0;
  for (int i = 0; i < 6; ++i)
    if (a & (1u << i)) swaps += std::popcount(b & ((1u << i) - 1));
  return (swaps % 2) ? -1 : 1;
}

Grassmann6 wedge(const Grassmann6& x, const Grassmann6& y) {
  Grassmann6 out;
  for (unsigned a = 0; a < 64; ++a) {
    if (x.c[a] == 0.0) continue;
    for (unsigned b = 0; b < 64; ++b) {
      if ((a & b) || y.c[b] == 0.0) continue;
      out.c[a | b] += static_cast<double>(reorder_sign(a, b)) * x.c[a] * y.c[b];
    }
  }
  return out;
}

}  // namespace

complex nakamura_top_coefficient(const NakamuraPoint& p) {
  const complex ez = std::exp(p.z1);
  const std::array<Grassmann6, 3> theta{
      Grassmann6::generator(0, 1.0) + Grassmann6::generator(5, -p.t * ez),
      Grassmann6::generator(2, 1.0 / ez), Grassmann6::generator(4, ez)};
  const std::array<Grassmann6, 3> theta_bar{
      Grassmann6::generator(1, 1.0) + Grassmann6::generator(4, -std::conj(p.t * ez)),
      Grassmann6::generator(3, std::conj(1.0 / ez)), Grassmann6::generator(5, std::conj(ez))};
  Grassmann6 omega;
  for (int k = 0; k < 3; ++k)
    omega += kI * wedge(theta[static_cast<std::size_t>(k)], theta_bar[static_cast<std::size_t>(k)]);
  return wedge(wedge(omega, omega), omega).c[63];
}

std::vector<NakamuraPoint> nakamura_sample(const std::vector<complex>& ts, int per_t,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-2.0, 2.0), im(-M_PI, M_PI);
  std::vector<NakamuraPoint> out;
  for (auto t : ts)
    for (int k = 0; k < per_t; ++k) {
      const double x = re(rng);
      out.push_back({{x, im(rng)}, t});
    }
  return out;
}

ExampleReport nakamura_check(const std::vector<NakamuraPoint>& samples) {
  if (samples.empty()) throw InputError("Nakamura check needs at least one sample");
  for (const auto& s : samples)
    if (std::abs(s.t) > 0.5) throw InputError("Nakamura deformation parameter |t| exceeds 0.5");

  const complex reference = nakamura_top_coefficient({0.0, 0.0});
  double spread = 0.0;
  for (const auto& s : samples)
    spread = std::max(spread, std::abs(nakamura_top_coefficient(s) - reference) /
                                  std::abs(reference));

  ExampleReport rep;
  rep.example = "nakamura";
  rep.checks.push_back(near("undeformed_coefficient", {reference.real(), reference.imag()},
                            {0.0, -6.0}, 1e-12, "6 sqrt(-1)^3 as (re, im)"));
  rep.checks.push_back(at_most("relative_spread", spread, 1e-12,
                               std::to_string(samples.size()) + " samples"));
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

complex polish_quadratic_root(complex z, complex b, complex c) {
  // Newton on z^2 + b z + c
  for (int k = 0; k < 3; ++k) {
    const complex f = z * z + b * z + c;
    const complex df = 2.0 * z + b;
    z -= f / df;
  }
  return z;
}

complex eval(const IntPolynomial& p, complex x) {
  complex s = 0.0;
  for (auto c : p) s = s * x + static_cast<double>(c);
  return s;
}

// Polynomial division by a monic q; returns the remainder.
IntPolynomial remainder(IntPolynomial p, const IntPolynomial& q) {
  if (q.empty() || q.front() != 1) throw InputError("divisor must be monic");
  while (p.size() >= q.size()) {
    const auto lead = p.front();
    for (std::size_t k = 0; k < q.size(); ++k) p[k] -= lead * q[k];
    p.erase(p.begin());
  }
  return p;
}

IntPolynomial quotient(IntPolynomial p, const IntPolynomial& q) {
  IntPolynomial out;
  while (p.size() >= q.size()) {
    const auto lead = p.front();
    out.push_back(lead);
    for (std::size_t k = 0; k < q.size(); ++k) p[k] -= lead * q[k];
    p.erase(p.begin());
  }
  if (std::any_of(p.begin(), p.end(), [](auto v) { return v != 0; }))
    throw InputError("inexact polynomial division");
  return out;
}

int euler_phi(int k) {
  int count = 0;
  for (int j = 1; j <= k; ++j)
    if (std::gcd(j, k) == 1) ++count;
  return count;
}

std::vector<double> as_doubles(const IntPolynomial& p) { return {p.begin(), p.end()}; }

std::string format_polynomial(const IntPolynomial& p) {
  std::ostringstream os;
  for (std::size_t k = 0; k < p.size(); ++k) os << (k ? " " : "") << p[k];
  return os.str();
}

}  // namespace

IntPolynomial cyclotomic(int k) {
  if (k < 1) throw InputError("cyclotomic index must be positive");
  IntPolynomial p(static_cast<std::size_t>(k + 1), 0);
  p.front() = 1;
  p.back() = -1;
  for (int d = 1; d < k; ++d)
    if (k % d == 0) p = quotient(p, cyclotomic(d));
  return p;
}

std::vector<int> cyclotomic_indices(int max_degree) {
  // phi(k) >= sqrt(k / 2), so nothing beyond 2 d^2 qualifies.
  std::vector<int> out;
  for (int k = 1; k <= 2 * max_degree * max_degree + 1; ++k)
    if (euler_phi(k) <= max_degree) out.push_back(k);
  return out;
}

bool divides(const IntPolynomial& q, const IntPolynomial& p) {
  const auto r = remainder(p, q);
  return std::all_of(r.begin(), r.end(), [](auto v) { return v == 0; });
}

bool quartic_irreducible(const IntPolynomial& p) {
  if (p.size() != 5 || p[0] != 1) throw InputError("expected a monic quartic");
  const auto c0 = p[4];
  if (c0 == 0) return false;
  std::vector<std::int64_t> divisors;
  for (std::int64_t d = 1; d <= std::abs(c0); ++d)
    if (c0 % d == 0) {
      divisors.push_back(d);
      divisors.push_back(-d);
    }
  for (auto r : divisors)
    if (eval(p, static_cast<double>(r)) == 0.0) return false;
  // (x^2 + a x + b)(x^2 + c x + d): bd = c0, a + c = p1, ac + b + d = p2, ad + bc = p3
  for (auto b : divisors) {
    const auto d = c0 / b;
    const auto sum = p[1];
    const auto prod = p[2] - b - d;
    const auto disc = sum * sum - 4 * prod;
    if (disc < 0) continue;
    const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(disc))));
    if (root * root != disc || (sum + root) % 2 != 0) continue;
    for (auto a : {(sum + root) / 2, (sum - root) / 2}) {
      const auto c = sum - a;
      if (a * d + b * c == p[3]) return false;
    }
  }
  return true;
}

IntPolynomial characteristic_polynomial(const std::array<std::array<std::int64_t, 4>, 4>& m) {
  using Mat = std::array<std::array<std::int64_t, 4>, 4>;
  IntPolynomial coeff(5, 0);
  coeff[0] = 1;
  Mat mk{};
  for (int k = 1; k <= 4; ++k) {
    Mat next{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        std::int64_t s = 0;
        for (int l = 0; l < 4; ++l) s += m[i][l] * mk[l][j];
        next[i][j] = s + (i == j ? coeff[static_cast<std::size_t>(k - 1)] : 0);
      }
    mk = next;
    std::int64_t tr = 0;
    for (int i = 0; i < 4; ++i)
      for (int l = 0; l < 4; ++l) tr += m[i][l] * mk[l][i];
    coeff[static_cast<std::size_t>(k)] = -tr / k;
  }
  return coeff;
}

YoshiharaData yoshihara_data() {
  const complex b{-1.0, -1.0}, c{1.0, 0.0};
  const complex disc = std::sqrt(b * b - 4.0 * c);
  complex r1 = polish_quadratic_root((-b + disc) / 2.0, b, c);
  complex r2 = polish_quadratic_root((-b - disc) / 2.0, b, c);
  if (std::abs(r1) < std::abs(r2)) std::swap(r1, r2);
  YoshiharaData y;
  y.alpha = r1;
  y.beta = r2;
  y.lambda = r1 * std::conj(r2);
  complex a = 1.0, bb = 1.0;
  for (auto& v : y.basis) {
    v = {a, bb};
    a *= y.alpha;
    bb *= std::conj(y.beta);
  }
  return y;
}

namespace {

const IntPolynomial kQuartic{1, -2, 4, -2, 1};

using IntMatrix4 = std::array<std::array<std::int64_t, 4>, 4>;

// Action of diag(alpha, conj(beta)) on the lattice basis: v_j -> v_{j+1},
// v_3 -> 2 v_3 - 4 v_2 + 2 v_1 - v_0.
IntMatrix4 lattice_map() {
  IntMatrix4 m{};
  for (int j = 0; j < 3; ++j) m[static_cast<std::size_t>(j + 1)][static_cast<std::size_t>(j)] = 1;
  m[0][3] = -1;
  m[1][3] = 2;
  m[2][3] = -4;
  m[3][3] = 2;
  return m;
}

// Realification of diag(alpha, conj(beta)) and the lattice basis in R^4.
Eigen::Matrix4d realify_diag(complex a, complex b) {
  Eigen::Matrix4d d = Eigen::Matrix4d::Zero();
  d << a.real(), -a.imag(), 0, 0, a.imag(), a.real(), 0, 0, 0, 0, b.real(), -b.imag(), 0, 0,
      b.imag(), b.real();
  return d;
}

Eigen::Matrix4d realify_basis(const YoshiharaData& y) {
  Eigen::Matrix4d basis;
  for (int j = 0; j < 4; ++j) {
    const auto& v = y.basis[static_cast<std::size_t>(j)];
    basis.col(j) << v[0].real(), v[0].imag(), v[1].real(), v[1].imag();
  }
  return basis;
}

}  // namespace

ExampleReport yoshihara_check(std::int64_t bound) {
  if (bound < 1) throw InputError("root-of-unity scan bound must be >= 1");
  const auto y = yoshihara_data();
  const complex beta_bar = std::conj(y.beta);
  ExampleReport rep;
  rep.example = "yoshihara";

  const complex ab = y.alpha * y.beta;
  rep.checks.push_back(near("alpha_beta_product", {ab.real(), ab.imag()}, {1.0, 0.0}, 1e-12));

  const double quartic_res = std::max(std::abs(eval(kQuartic, y.alpha)),
                                      std::abs(eval(kQuartic, beta_bar)));
  rep.checks.push_back(at_most("quartic_residual", quartic_res, 1e-12,
                               "max |p(alpha)|, |p(conj beta)|"));

  double rec = 0.0;
  for (int c = 0; c < 2; ++c) {
    const complex x = c == 0 ? y.alpha : beta_bar;
    const complex x4 = x * x * x * x;
    rec = std::max(rec, std::abs(x4 - (2.0 * x * x * x - 4.0 * x * x + 2.0 * x - 1.0)));
  }
  rep.checks.push_back(at_most("lattice_recurrence", rec, 1e-12));

  rep.checks.push_back(near("lambda_modulus", {std::abs(y.lambda)}, {1.0}, 1e-12));

  int matches = 0;
  for (int k : cyclotomic_indices(4))
    if (cyclotomic(k) == kQuartic) ++matches;
  rep.checks.push_back({"quartic_not_cyclotomic", {static_cast<double>(matches)}, {0.0}, 0.0,
                        matches == 0, "cyclotomic polynomials of degree <= 4 equal to the quartic"});
  const bool irreducible = quartic_irreducible(kQuartic);
  rep.checks.push_back({"quartic_irreducible", {irreducible ? 1.0 : 0.0}, {1.0}, 0.0, irreducible,
                        "no rational root, no integer quadratic factor"});

  // The quartic above is satisfied by alpha; lambda = alpha conj(beta) has its
  // own minimal polynomial, with roots the products a b (a in {alpha, beta},
  // b in {conj alpha, conj beta}).
  std::vector<complex> poly{1.0};
  for (complex a : {y.alpha, y.beta})
    for (complex b : {std::conj(y.alpha), beta_bar}) {
      std::vector<complex> next(poly.size() + 1, 0.0);
      for (std::size_t k = 0; k < poly.size(); ++k) {
        next[k] += poly[k];
        next[k + 1] -= a * b * poly[k];
      }
      poly = next;
    }
  IntPolynomial lambda_poly;
  double rounding = 0.0;
  for (auto c : poly) {
    const auto r = std::llround(c.real());
    lambda_poly.push_back(r);
    rounding = std::max(rounding, std::abs(c - static_cast<double>(r)));
  }
  rep.checks.push_back(near("lambda_minimal_polynomial", as_doubles(lambda_poly),
                            {1.0, -2.0, -2.0, -2.0, 1.0}, 0.0,
                            "integer rounding residual " + std::to_string(rounding)));
  rep.checks.back().pass = rep.checks.back().pass && rounding <= 1e-9;
  rep.checks.push_back(
      at_most("lambda_polynomial_residual", std::abs(eval(lambda_poly, y.lambda)), 1e-12));

  int dividing = 0;
  for (int k : cyclotomic_indices(4))
    if (divides(cyclotomic(k), lambda_poly)) ++dividing;
  rep.checks.push_back({"lambda_not_root_of_unity", {static_cast<double>(dividing)}, {0.0}, 0.0,
                        dividing == 0,
                        "cyclotomic factors of degree <= 4 of " + format_polynomial(lambda_poly)});

  const long double theta = std::atan2(static_cast<long double>(y.lambda.imag()), static_cast<long double>(y.lambda.real()));
  long double worst = INFINITY;
  std::int64_t worst_k = 0;
  for (std::int64_t k = 1; k <= bound; ++k) {
    const long double v = 2.0L * std::fabs(std::sin(static_cast<long double>(k) * theta / 2.0L));
    if (v < worst) {
      worst = v;
      worst_k = k;
    }
  }
  rep.checks.push_back({"power_scan",
                        {static_cast<double>(worst)},
                        {1e-6},
                        1e-6,
                        worst > 1e-6L,
                        "min |lambda^k - 1| for k <= " + std::to_string(bound) + " at k = " +
                            std::to_string(worst_k)});

  const auto m = lattice_map();
  const auto charpoly = characteristic_polynomial(m);
  const double det = static_cast<double>(charpoly.back());
  rep.checks.push_back(near("lattice_map_determinant", {std::abs(det)}, {1.0}, 0.0));
  rep.checks.push_back(near("lattice_map_charpoly", as_doubles(charpoly), as_doubles(kQuartic), 0.0));

  const Eigen::Matrix4d basis = realify_basis(y);
  const Eigen::Matrix4d induced =
      basis.fullPivLu().solve(realify_diag(y.alpha, beta_bar) * basis);
  double lattice_err = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      lattice_err = std::max(
          lattice_err, std::abs(induced(i, j) - static_cast<double>(m[static_cast<std::size_t>(i)]
                                                                     [static_cast<std::size_t>(j)])));
  rep.checks.push_back(at_most("lattice_map_integral", lattice_err, 1e-9,
                               "max |B^-1 D B - companion matrix|"));

  // f^* (dz1 ^ dz2) = det(diag(alpha, conj beta)) dz1 ^ dz2
  Eigen::Matrix2cd linear;
  linear << y.alpha, 0.0, 0.0, beta_bar;
  const complex eig = linear.determinant();
  rep.checks.push_back(near("suspension_eigenvalue", {eig.real(), eig.imag()},
                            {y.lambda.real(), y.lambda.imag()}, 1e-14));
  return rep;
}

ExampleReport flat_volume_descent_check() {
  const auto y = yoshihara_data();
  const complex beta_bar = std::conj(y.beta);
  ExampleReport rep;
  rep.example = "flat-volume";

  const double jac = std::norm(y.alpha * beta_bar);
  rep.checks.push_back(near("holomorphic_jacobian", {jac}, {1.0}, 1e-14, "|det diag(alpha, conj beta)|^2"));
  rep.checks.push_back(near("alpha_beta_modulus", {std::abs(y.alpha) * std::abs(y.beta)}, {1.0}, 1e-14));
  const double real_det = realify_diag(y.alpha, beta_bar).determinant();
  rep.checks.push_back(near("real_jacobian", {real_det}, {1.0}, 1e-12));
  const auto charpoly = characteristic_polynomial(lattice_map());
  rep.checks.push_back(
      near("lattice_map_determinant", {std::abs(static_cast<double>(charpoly.back()))}, {1.0}, 0.0));
  IntMatrix4 identity{};
  for (std::size_t i = 0; i < 4; ++i) identity[i][i] = 1;
  rep.checks.push_back(near("identity_determinant",
                            {static_cast<double>(characteristic_polynomial(identity).back())}, {1.0},
                            0.0));
  return rep;
}

}  // namespace hermweb
