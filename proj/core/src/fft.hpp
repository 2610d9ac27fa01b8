#pragma once

#include <span>
#include <vector>

namespace wavematch::detail {

/// |DFT| of a real sequence for bins 0..n/2 (FFTW-backed, thread-safe).
std::vector<double> dft_magnitude(std::span<const double> x);

} // namespace wavematch::detail
