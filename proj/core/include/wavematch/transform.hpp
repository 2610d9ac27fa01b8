#pragma once

#include "wavematch/filterbank.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace wavematch {

/// Default sampling period of the recordings (10 Hz).
inline constexpr double kDefaultSamplePeriod = 0.1;

/// A uniformly sampled real signal.
struct Signal {
    std::vector<double> samples;
    double sample_period = kDefaultSamplePeriod;

    std::size_t size() const { return samples.size(); }
};

/// Number of pyramid stages J0.
struct DecompositionPlan {
    int levels = 1;
};

/// Returns J with n == 2^J; throws ShapeError otherwise (including n < 2).
int exact_log2(std::size_t n);

/// Multi-level periodic DWT output {d_1 .. d_J0, a_J0}. details[0] is the
/// finest level d_1 (length N/2), details[J0-1] the coarsest.
struct DwtCoeffs {
    std::vector<std::vector<double>> details;
    std::vector<double> approx;
    DecompositionPlan plan;

    /// Total coefficient count; equals the signal length.
    std::size_t size() const;

    /// Flat layout: a_J0, then d_J0, d_J0-1, ..., d_1 (coarse to fine).
    std::vector<double> flatten() const;

    /// Inverse of flatten for a signal of length flat.size().
    static DwtCoeffs unflatten(std::span<const double> flat, DecompositionPlan plan);
};

/// Pyramid analysis with circular extension. The filter is applied as
///   a[n] = sum_k h_k x[(2n + k - (L/2 - 1)) mod N]
/// (g likewise), so that zero-padded embeddings of shorter filters give the
/// same coefficients as the short filter itself.
/// Throws ShapeError if N is not a power of two or samples are not finite,
/// PlanError if J0 is outside [1, log2 N].
DwtCoeffs dwt(std::span<const double> x, const FilterPair& f, DecompositionPlan plan);

/// Inverse pyramid (upsample, filter, sum); exact inverse of dwt for
/// orthonormal filters. Throws ShapeError on inconsistent level lengths.
std::vector<double> idwt(const DwtCoeffs& c, const FilterPair& f);

/// One analysis stage, exposed for tests and benchmarks.
void analysis_step(std::span<const double> x, const FilterPair& f,
                   std::span<double> approx, std::span<double> detail);

/// One synthesis stage; out.size() == 2 * approx.size().
void synthesis_step(std::span<const double> approx, std::span<const double> detail,
                    const FilterPair& f, std::span<double> out);

/// CSV with header "level,index,value"; level 0 is the approximation vector,
/// level j the detail vector d_j.
std::string coeffs_csv(const DwtCoeffs& c);

} // namespace wavematch
