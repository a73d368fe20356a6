#pragma once

#include <string>
#include <vector>

#include "hermweb/error.hpp"
#include "hermweb/metric.hpp"

namespace hermweb {

/// One point on a Chern-Ricci flow trajectory d omega / dt = -Ric(omega).
struct FlowState {
  double t = 0.0;
  HermitianMetricField g;
  double ricci_norm = 0.0;

  static FlowState initial(const HermitianMetricField& g);
};

/// A single step could not be taken (positivity lost at the predictor or
/// corrector stage). Retrying with dt / 2 is the usual remedy.
class StepRejected : public Error {
 public:
  StepRejected(const std::string& what, double dt) : Error(what), dt_(dt) {}
  double dt() const noexcept { return dt_; }

 private:
  double dt_;
};

/// Heun (RK2) step of the flow. Throws InputError for dt <= 0 and
/// StepRejected when an intermediate metric is not positive definite.
FlowState flow_step(const FlowState& state, double dt);

struct FlowRecord {
  int step = 0;
  double t = 0.0;
  double dt = 0.0;  ///< step size used (0 for the initial record)
  double ricci_norm = 0.0;
};

struct FlowOptions {
  double tolerance = 1e-6;
  double dt0 = 1e-4;
  int max_steps = 100000;
  /// Give up after this many consecutive rejections.
  int max_rejections = 60;

  void validate() const;
};

struct FlowResult {
  FlowState state;
  std::vector<FlowRecord> history;  ///< accepted steps only
  int rejected = 0;
};

/// Raised by run_flow when the step cap is hit or dt collapses. Carries the
/// trajectory so far.
class FlowFailure : public Error {
 public:
  FlowFailure(const std::string& what, FlowResult partial)
      : Error(what), partial_(std::move(partial)) {}
  const FlowResult& partial() const noexcept { return partial_; }

 private:
  FlowResult partial_;
};

/// Adaptive flow until ricci_norm <= tolerance. A step is rejected, and dt
/// halved, when positivity fails or ricci_norm would increase; after an
/// accepted step dt grows by 1.1 up to dt0.
FlowResult run_flow(const HermitianMetricField& g0, const FlowOptions& options);

}  // namespace hermweb
