#pragma once

#include "wavematch/filterbank.hpp"
#include "wavematch/transform.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace wavematch {

/// Target compression ratio N/M; must be finite and >= 1.
struct CompressionConfig {
    double cr = 1.0;
};

/// The compression ratio set used for wavelet matching.
inline constexpr double kDefaultCompressionRatios[] = {3.0, 5.0, 7.0, 10.0};

struct CompressionResult {
    double cr_requested = 1.0;
    double cr_actual = 1.0;   // N / M
    std::size_t kept = 0;     // M
    double prd_percent = 0.0;
};

/// M = max(1, floor(n / cr)). Throws InvalidParameter for cr < 1 or non-finite.
std::size_t retained_count(std::size_t n, double cr);

/// Indices of the m largest |values|, ordered by decreasing magnitude; equal
/// magnitudes are ranked by lower index first.
std::vector<std::size_t> top_m_indices(std::span<const double> values, std::size_t m);

struct ThresholdResult {
    DwtCoeffs coeffs;         // hard-thresholded copy
    std::vector<bool> kept_mask;  // over the flat layout
    std::size_t kept = 0;
    double cr_actual = 1.0;
};

/// Keeps the M largest-magnitude coefficients (flat order breaks ties, so the
/// approximation vector and coarser levels win) and zeroes the rest.
ThresholdResult threshold_top_m(const DwtCoeffs& c, CompressionConfig cfg);

/// Percent root-mean-square difference, 100 * sqrt(sum (x - y)^2 / sum x^2).
/// Throws ShapeError on length mismatch, NumericalError when x has zero energy.
double prd(std::span<const double> original, std::span<const double> reconstructed);

/// dwt -> threshold_top_m -> idwt -> prd.
CompressionResult compress_and_measure(std::span<const double> x, const FilterPair& f,
                                       DecompositionPlan plan, CompressionConfig cfg);

CompressionResult compress_and_measure(std::span<const double> x, const WaveletSpec& w,
                                       DecompositionPlan plan, CompressionConfig cfg);

/// "cr_requested,cr_actual,M,prd_percent"
std::string compression_csv_header();
std::string to_csv_row(const CompressionResult& r);

} // namespace wavematch
