#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hermweb/grid.hpp"

namespace hermweb {

/// One named numeric check: measured values against expected values.
struct ExampleCheck {
  std::string name;
  std::vector<double> computed;
  std::vector<double> expected;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct ExampleReport {
  std::string example;
  std::vector<ExampleCheck> checks;

  bool passed() const;
  const ExampleCheck& check(const std::string& name) const;
};

// ---------------------------------------------------------------------------
// Hopf manifold: omega = delta_ij / |z|^2 on C^n \ {0}

using HopfPoint = std::vector<complex>;

/// Closed-form Hermitian matrix of Ric at z:
///   n / |z|^2 (delta_ij - conj(z_i) z_j / |z|^2).
std::vector<complex> hopf_ricci_closed_form(const HopfPoint& z);
/// Ric at z from 4th-order central differences of -log det g with step h.
std::vector<complex> hopf_ricci_finite_difference(const HopfPoint& z, double h);

/// `count` points with 0.1 <= |z| <= 3, deterministic in `seed`.
std::vector<HopfPoint> hopf_sample(int n, int count, std::uint64_t seed);

/// Throws InputError when a point has the wrong length or |z| < 0.1.
ExampleReport hopf_check(const std::vector<HopfPoint>& points, int n);

// ---------------------------------------------------------------------------
// Nakamura manifold deformations

struct NakamuraPoint {
  complex z1;
  complex t;
};

/// Coefficient of dz1^dzbar1^dz2^dzbar2^dz3^dzbar3 in omega^3 for the coframe
///   theta1 = dz1 - t e^{z1} dzbar3, theta2 = e^{-z1} dz2, theta3 = e^{z1} dz3.
complex nakamura_top_coefficient(const NakamuraPoint& p);

/// `per_t` random z1 for each listed t, deterministic in `seed`.
std::vector<NakamuraPoint> nakamura_sample(const std::vector<complex>& ts, int per_t,
                                           std::uint64_t seed);

/// Throws InputError when |t| > 0.5.
ExampleReport nakamura_check(const std::vector<NakamuraPoint>& samples);

// ---------------------------------------------------------------------------
// Yoshihara suspension arithmetic

struct YoshiharaData {
  complex alpha;   ///< root of x^2 - (1+i)x + 1 with |alpha| > 1
  complex beta;    ///< the other root
  complex lambda;  ///< alpha * conj(beta)
  complex tau{0.0, 1.0};
  /// Lattice generators (alpha^j, conj(beta)^j), j = 0..3.
  std::array<std::array<complex, 2>, 4> basis;
};

YoshiharaData yoshihara_data();

/// Integer polynomial, coefficients from the leading term down.
using IntPolynomial = std::vector<std::int64_t>;

/// Cyclotomic polynomial Phi_k.
IntPolynomial cyclotomic(int k);
/// Every k with Euler phi(k) <= max_degree.
std::vector<int> cyclotomic_indices(int max_degree);
/// True when a monic integer quartic has no rational root and no factorization
/// into two integer quadratics (equivalently, is irreducible over Q).
bool quartic_irreducible(const IntPolynomial& p);
/// True when q divides p exactly over Z (q monic).
bool divides(const IntPolynomial& q, const IntPolynomial& p);

/// Characteristic polynomial of an integer 4x4 matrix (Faddeev-LeVerrier).
IntPolynomial characteristic_polynomial(const std::array<std::array<std::int64_t, 4>, 4>& m);

ExampleReport yoshihara_check(std::int64_t bound);
ExampleReport flat_volume_descent_check();

}  // namespace hermweb
