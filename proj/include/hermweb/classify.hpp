#pragma once

#include "hermweb/metric.hpp"

namespace hermweb {

/// Residual norms and flags of the standard metric conditions.
///
/// kahler:              |d omega|
/// balanced:            |d(omega^{n-1})|
/// gauduchon:           |d d-bar (omega^{n-1})|
/// astheno_kahler:      |d d-bar (omega^{n-2})|, vacuous for n = 2
/// strongly_gauduchon:  Fourier least-squares residual of del beta = delbar(omega^{n-1})
///
/// A Kähler flag implies the other flags (dw = 0 forces each derived
/// condition), so those are reported true whenever kahler is.
struct ClassReport {
  double tolerance = 0.0;

  double kahler_residual = 0.0;
  double balanced_residual = 0.0;
  double gauduchon_residual = 0.0;
  double astheno_kahler_residual = 0.0;
  double strongly_gauduchon_defect = 0.0;

  bool kahler = false;
  bool balanced = false;
  bool gauduchon = false;
  bool astheno_kahler = false;
  bool strongly_gauduchon = false;
  /// True when n < 3 and the astheno-Kähler flag holds vacuously.
  bool astheno_kahler_vacuous = false;
};

/// Throws InputError when tol <= 0.
ClassReport classify(const HermitianMetricField& g, double tol);

/// Least-squares defect of solving del beta = target for an (n-1, n)-form target.
double del_exactness_defect(const FormField& target);

}  // namespace hermweb
