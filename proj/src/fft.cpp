#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace hermweb::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

// FFTW planning is not thread-safe; execution with fftw_execute_dft is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.inverse);
    }
  }

  PlanPair get(const std::vector<int>& dims) {
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(dims); it != plans_.end()) return it->second;
    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);
    std::vector<fftw_complex> scratch(total);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair plans;
    plans.forward = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), scratch.data(),
                                  scratch.data(), FFTW_FORWARD, flags);
    plans.inverse = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), scratch.data(),
                                  scratch.data(), FFTW_BACKWARD, flags);
    plans_.emplace(dims, plans);
    return plans;
  }

 private:
  std::mutex mutex_;
  std::map<std::vector<int>, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

std::vector<int> active_dims(const PeriodicGrid& grid) {
  std::vector<int> dims;
  for (int a = 0; a < grid.real_dim(); ++a)
    if (grid.active(a)) dims.push_back(grid.axis_size(a));
  return dims;
}

void execute(const PeriodicGrid& grid, std::span<complex> data, bool forward) {
  const auto dims = active_dims(grid);
  if (dims.empty()) return;
  const PlanPair plans = cache().get(dims);
  auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(forward ? plans.forward : plans.inverse, buffer, buffer);
}

}  // namespace

void fft_forward(const PeriodicGrid& grid, std::span<complex> data) { execute(grid, data, true); }

void fft_inverse(const PeriodicGrid& grid, std::span<complex> data) {
  execute(grid, data, false);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& v : data) v *= scale;
}

}  // namespace hermweb::detail
