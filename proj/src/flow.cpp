#include "hermweb/flow.hpp"

#include <algorithm>
#include <cmath>

#include "hermweb/geometry.hpp"

namespace hermweb {

FlowState FlowState::initial(const HermitianMetricField& g) { return {0.0, g, hermweb::ricci_norm(g)}; }

namespace {

// -Ric as a Hermitian block: d_i d_jbar log det g.
std::vector<ScalarField> velocity(const HermitianMetricField& g) {
  return complex_hessian(g.log_det());
}

std::vector<ScalarField> axpy(const HermitianMetricField& g, double a,
                              const std::vector<ScalarField>& v) {
  auto out = g.components();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += a * v[k];
  return out;
}

HermitianMetricField checked(const HermitianMetricField& g, std::vector<ScalarField> block,
                             double dt, const char* stage) {
  if (auto bad = first_non_positive_point(block, g.dim()))
    throw StepRejected(std::string("positivity lost at the ") + stage + " stage (grid point " +
                           std::to_string(*bad) + "); retry with dt = " +
                           std::to_string(dt / 2),
                       dt);
  return HermitianMetricField(g.grid(), std::move(block));
}

}  // namespace

FlowState flow_step(const FlowState& state, double dt) {
  if (!(dt > 0.0)) throw InputError("flow step needs dt > 0");
  const auto k1 = velocity(state.g);
  const auto predictor = checked(state.g, axpy(state.g, dt, k1), dt, "predictor");
  const auto k2 = velocity(predictor);
  auto block = state.g.components();
  for (std::size_t k = 0; k < block.size(); ++k) block[k] += (0.5 * dt) * (k1[k] + k2[k]);
  auto g = checked(state.g, std::move(block), dt, "corrector");
  const double norm = hermweb::ricci_norm(g);
  return {state.t + dt, std::move(g), norm};
}

void FlowOptions::validate() const {
  if (!(tolerance > 0.0)) throw InputError("flow tolerance must be positive");
  if (!(dt0 > 0.0)) throw InputError("initial flow step must be positive");
  if (max_steps < 0 || max_rejections < 1) throw InputError("flow step caps must be positive");
}

FlowResult run_flow(const HermitianMetricField& g0, const FlowOptions& options) {
  options.validate();
  FlowResult result{FlowState::initial(g0), {}, 0};
  result.history.push_back({0, 0.0, 0.0, result.state.ricci_norm});

  double dt = options.dt0;
  int consecutive = 0;
  int steps = 0;
  while (result.state.ricci_norm > options.tolerance) {
    if (steps >= options.max_steps)
      throw FlowFailure("flow step cap reached with ricci_norm " +
                            std::to_string(result.state.ricci_norm),
                        std::move(result));
    bool accepted = false;
    try {
      auto next = flow_step(result.state, dt);
      if (next.ricci_norm <= result.state.ricci_norm) {
        result.state = std::move(next);
        accepted = true;
      }
    } catch (const StepRejected&) {
    }
    if (!accepted) {
      ++result.rejected;
      if (++consecutive > options.max_rejections)
        throw FlowFailure("flow step size collapsed at t = " + std::to_string(result.state.t),
                          std::move(result));
      dt *= 0.5;
      continue;
    }
    consecutive = 0;
    ++steps;
    result.history.push_back({steps, result.state.t, dt, result.state.ricci_norm});
    dt = std::min(1.1 * dt, options.dt0);
  }
  return result;
}

}  // namespace hermweb
