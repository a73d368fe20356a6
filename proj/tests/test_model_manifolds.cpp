#include <doctest.h>

#include <cmath>
#include <random>

#include "hermweb/error.hpp"
#include "hermweb/model_manifolds.hpp"
#include "oracles.hpp"

using namespace hermweb;

namespace {

// (1,0) covector with coefficients on (dz1, dzbar1, dz2, dzbar2, dz3, dzbar3)
oracle::AltTensor covector(std::initializer_list<std::pair<int, complex>> terms) {
  oracle::AltTensor t;
  for (const auto& [g, c] : terms) t[{g}] += c;
  return t;
}

oracle::AltTensor add(oracle::AltTensor a, const oracle::AltTensor& b, complex s = 1.0) {
  for (const auto& [k, v] : b) a[k] += s * v;
  return a;
}

complex nakamura_oracle(complex z1, complex t) {
  const complex e = std::exp(z1);
  const oracle::AltTensor th[3] = {covector({{0, 1.0}, {5, -t * e}}), covector({{2, 1.0 / e}}),
                                   covector({{4, e}})};
  const oracle::AltTensor tb[3] = {covector({{1, 1.0}, {4, -std::conj(t * e)}}),
                                   covector({{3, std::conj(1.0 / e)}}),
                                   covector({{5, std::conj(e)}})};
  oracle::AltTensor omega;
  for (int k = 0; k < 3; ++k) omega = add(omega, oracle::wedge(th[k], 1, tb[k], 1, 6), kI);
  const auto o2 = oracle::wedge(omega, 2, omega, 2, 6);
  return oracle::value(oracle::wedge(o2, 4, omega, 2, 6), {0, 1, 2, 3, 4, 5});
}

IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

TEST_CASE("Hopf Ricci closed form") {
  const auto r = hopf_ricci_closed_form({1.0, 1.0});
  const double expected[4] = {0.5, -0.5, -0.5, 0.5};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(r[k] - expected[k]) <= 1e-15);
  CHECK_THROWS_AS(hopf_check({{1.0, 1.0, 1.0}}, 2), InputError);
  CHECK_THROWS_AS(hopf_check({{0.01, 0.0}}, 2), InputError);
}

TEST_CASE("property: Hopf Ricci has conj(z) in its kernel and matches differences") {
  for (int n : {2, 3}) {
    const auto pts = hopf_sample(n, 25, 41);
    CHECK(pts == hopf_sample(n, 25, 41));
    for (const auto& z : pts) {
      double r2 = 0.0;
      for (auto c : z) r2 += std::norm(c);
      CHECK(std::sqrt(r2) >= 0.1);
      CHECK(std::sqrt(r2) <= 3.0 + 1e-12);
      const auto ric = hopf_ricci_closed_form(z);
      const auto fd = hopf_ricci_finite_difference(z, 1e-3);
      for (int i = 0; i < n; ++i) {
        complex kv = 0.0;
        for (int j = 0; j < n; ++j) kv += ric[static_cast<std::size_t>(i * n + j)] * std::conj(z[static_cast<std::size_t>(j)]);
        CHECK(std::abs(kv) <= 1e-13 * n / r2);
        for (int j = 0; j < n; ++j) {
          const auto k = static_cast<std::size_t>(i * n + j);
          CHECK(std::abs(ric[k] - fd[k]) <= 1e-6 * n / r2);
        }
      }
    }
    CHECK(hopf_check(pts, n).passed());
  }
}

TEST_CASE("Nakamura top coefficient against the permutation oracle") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    const complex z1(u(rng), u(rng) * M_PI);
    const complex t = k == 0 ? complex(0.0) : 0.4 * complex(u(rng), u(rng)) / std::sqrt(2.0);
    const complex c = nakamura_top_coefficient({z1, t});
    CHECK(std::abs(c - nakamura_oracle(z1, t)) <= 1e-12);
    CHECK(std::abs(c - complex(0.0, -6.0)) <= 1e-12);
  }
  CHECK(nakamura_check(nakamura_sample({0.0, {0.1, 0.1}, 0.3}, 20, 3)).passed());
  CHECK_THROWS_AS(nakamura_check({{0.0, 0.6}}), InputError);
}

TEST_CASE("Yoshihara constants") {
  const auto d = yoshihara_data();
  const complex disc = std::sqrt(complex(1.0, 1.0) * complex(1.0, 1.0) - 4.0);
  const complex r1 = (complex(1.0, 1.0) + disc) / 2.0, r2 = (complex(1.0, 1.0) - disc) / 2.0;
  const complex alpha = std::abs(r1) > 1.0 ? r1 : r2;
  const complex beta = std::abs(r1) > 1.0 ? r2 : r1;
  CHECK(std::abs(d.alpha - alpha) <= 1e-14);
  CHECK(std::abs(d.beta - beta) <= 1e-14);
  CHECK(std::abs(d.lambda - alpha * std::conj(beta)) <= 1e-14);
  // frozen
  CHECK(d.alpha.real() == doctest::Approx(0.742934).epsilon(1e-5));
  CHECK(d.alpha.imag() == doctest::Approx(1.529086).epsilon(1e-5));
  CHECK(d.lambda.real() == doctest::Approx(-0.618034).epsilon(1e-5));
  const complex l = d.lambda;
  CHECK(std::abs(l * l * l * l - 2.0 * l * l * l - 2.0 * l * l - 2.0 * l + 1.0) <= 1e-13);
  CHECK(std::abs(std::abs(l) - 1.0) <= 1e-14);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_indices(4) == std::vector<int>{1, 2, 3, 4, 5, 6, 8, 10, 12});
  CHECK(cyclotomic(1) == IntPolynomial{1, -1});
  CHECK(cyclotomic(5) == IntPolynomial{1, 1, 1, 1, 1});
  CHECK(cyclotomic(8) == IntPolynomial{1, 0, 0, 0, 1});
  CHECK(cyclotomic(12) == IntPolynomial{1, 0, -1, 0, 1});
  // x^12 - 1 is the product of Phi_d over d | 12
  IntPolynomial prod{1};
  for (int d : {1, 2, 3, 4, 6, 12}) prod = multiply(prod, cyclotomic(d));
  IntPolynomial x12(13, 0);
  x12.front() = 1;
  x12.back() = -1;
  CHECK(prod == x12);
  CHECK(divides(cyclotomic(4), {1, 0, 0, 0, -1}));
  CHECK_FALSE(divides(cyclotomic(3), {1, 0, 0, 0, -1}));
}

TEST_CASE("quartic irreducibility") {
  CHECK(quartic_irreducible({1, -2, -2, -2, 1}));
  CHECK(quartic_irreducible({1, 0, 0, 0, 1}));
  CHECK(quartic_irreducible({1, 0, 0, 0, -2}));
  CHECK_FALSE(quartic_irreducible({1, 0, 3, 0, 2}));
  CHECK_FALSE(quartic_irreducible({1, 0, 0, 0, -1}));
  CHECK_FALSE(quartic_irreducible({1, 0, 0, 0, 4}));
  CHECK_FALSE(quartic_irreducible({1, 0, 0, 0, -4}));
  CHECK_FALSE(quartic_irreducible({1, -1, 0, 0, 0}));
}

TEST_CASE("property: characteristic polynomial of a companion matrix") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> coef(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    IntPolynomial p{1, coef(rng), coef(rng), coef(rng), coef(rng)};
    std::array<std::array<std::int64_t, 4>, 4> m{};
    for (int i = 1; i < 4; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] = 1;
    for (int i = 0; i < 4; ++i) m[static_cast<std::size_t>(i)][3] = -p[static_cast<std::size_t>(4 - i)];
    CHECK(characteristic_polynomial(m) == p);
  }
}

TEST_CASE("Yoshihara and flat-volume checks") {
  const auto rep = yoshihara_check(10000);
  CHECK(rep.passed());
  CHECK(rep.check("power_scan").pass);
  CHECK_THROWS(rep.check("no_such_check"));
  CHECK(flat_volume_descent_check().passed());
}
