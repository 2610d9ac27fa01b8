#pragma once

#include "wavematch/scales.hpp"
#include "wavematch/transform.hpp"

#include <cstdint>
#include <vector>

namespace wavematch::cli {

/// Sampling rate of generated signals.
inline constexpr double kSyntheticRateHz = 10.0;

/// Slow-wave stand-in: a sinusoid at the dominant rate, optional harmonics
/// (relative amplitudes of the 2nd, 3rd, ... harmonic) and white Gaussian
/// noise whose RMS is noise_level times the RMS of the deterministic part.
struct SyntheticSpec {
    double dominant_cpm = kCanineDominantCpm;
    std::vector<double> harmonics{0.3, 0.1};
    double noise_level = 0.2;
    double duration_s = 410.0;
    std::uint64_t seed = 1;
    int required_levels = 8;  // duration must cover 2 * 2^required_levels samples
};

SyntheticSpec synthetic_preset(Species species);

/// Throws InvalidParameter on a non-positive rate, negative noise or too short a duration.
void validate(const SyntheticSpec& spec);

/// Deterministic for a fixed spec (seed included); sampled at 10 Hz.
Signal synthesize(const SyntheticSpec& spec);

} // namespace wavematch::cli
