#pragma once

#include <span>

#include "hermweb/grid.hpp"

namespace hermweb::detail {

// In-place multidimensional DFT over the active axes of `grid`.
void fft_forward(const PeriodicGrid& grid, std::span<complex> data);
// Inverse DFT, normalized by the point count.
void fft_inverse(const PeriodicGrid& grid, std::span<complex> data);

}  // namespace hermweb::detail
