#pragma once

#include "wavematch/filterbank.hpp"

#include <span>
#include <vector>

namespace wavematch {

/// Default cascade depth for wavelet shapes.
inline constexpr int kDefaultShapeDepth = 10;

/// Samples of the wavelet function psi on the closed support [0, L-1] at
/// step 2^-depth, i.e. (L-1) * 2^depth + 1 samples.
struct WaveletShape {
    std::vector<double> samples;
    double grid_step = 1.0;
    int depth = 0;

    /// sum psi^2 * grid_step
    double energy() const;
};

/// Values of the scaling function at the integers 0..L-1 used to seed the
/// cascade. This is the eigenvector of the refinement matrix for eigenvalue 1
/// (unit sum) when it is unique, and the unit impulse otherwise.
std::vector<double> scaling_function_integer_samples(std::span<const double> h);

/// Cascade samples of psi without normalization.
std::vector<double> cascade_wavelet(const FilterPair& f, int depth);

/// Cascade approximation of psi, scaled to unit energy.
/// Throws InvalidParameter for depth < 6 (or > 20), NumericalError for a
/// zero-energy result.
WaveletShape wavelet_shape(const FilterPair& f, int depth = kDefaultShapeDepth);
WaveletShape wavelet_shape(const WaveletSpec& w, int depth = kDefaultShapeDepth);

/// Pearson correlation maximized over integer sample shifts of v relative to u
/// and over the sign of v. Samples outside either support count as zeros.
/// Throws InvalidParameter if the grid steps differ, NumericalError if either
/// shape has zero variance.
double correlate_shapes(const WaveletShape& u, const WaveletShape& v);

} // namespace wavematch
