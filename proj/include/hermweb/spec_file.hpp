#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hermweb/expr.hpp"
#include "hermweb/metric.hpp"

namespace hermweb {

/// Upper-triangular block of coefficient expressions; entry (i, j), i <= j,
/// has a real part and an optional imaginary part. The lower triangle is the
/// conjugate transpose.
struct MetricExprBlock {
  int n = 0;
  std::vector<std::optional<Expr>> re;  ///< row-major n x n, upper triangle only
  std::vector<std::optional<Expr>> im;

  /// Evaluates on `grid` and validates Hermitian positivity. `where` prefixes errors.
  HermitianMetricField evaluate(const PeriodicGrid& grid, const std::string& where) const;
  double periodicity_defect(const PeriodicGrid& grid) const;
};

struct ManifoldSpec {
  std::string name;
  int n = 0;
  std::vector<int> grid;  ///< points per real axis (x1, y1, x2, y2, ...)
  MetricExprBlock metric;
  std::optional<MetricExprBlock> reference;
  std::optional<Expr> potential;
  std::map<std::string, double> solver;  ///< [solver] section
  std::string digest;                    ///< FNV-1a 64 of the file bytes, hex
  std::vector<std::string> warnings;

  PeriodicGrid make_grid() const;
};

/// FNV-1a 64-bit hash, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Parses spec text. `grid_override`, when non-empty, replaces [manifold] grid
/// before validation. Errors are InputError with the offending field path.
ManifoldSpec parse_spec(std::string_view text, const std::vector<int>& grid_override = {});
ManifoldSpec load_spec(const std::filesystem::path& path,
                       const std::vector<int>& grid_override = {});

}  // namespace hermweb
