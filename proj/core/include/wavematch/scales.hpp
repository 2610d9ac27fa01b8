#pragma once

#include "wavematch/filterbank.hpp"

#include <string_view>
#include <vector>

namespace wavematch {

/// Cascade depth used when estimating center frequencies.
inline constexpr int kCenterFrequencyDepth = 8;

/// Dominant slow-wave frequencies in cycles per minute.
inline constexpr double kCanineDominantCpm = 5.0;  // middle of the 4-6 cpm band
inline constexpr double kHumanDominantCpm = 3.0;

enum class Species { Canine, Human };

double dominant_cpm(Species s);
std::string_view species_name(Species s);
Species parse_species(std::string_view text);

/// Frequency (cycles per unit of the filter's sample spacing) maximizing the
/// DFT magnitude of the cascade wavelet sampled over its closed support
/// [0, L-1], mean removed, without zero padding. The result is k / (n * step)
/// for the peak bin k of the n-point DFT with 0 < f < L, lowest bin on ties.
/// Throws NumericalError if the shape carries no energy.
double center_frequency(const FilterPair& f, int depth = kCenterFrequencyDepth);
double center_frequency(const WaveletSpec& w, int depth = kCenterFrequencyDepth);

/// f_psi / (2^level * sample_period), in Hz.
double pseudo_frequency(double center_freq, double sample_period, int level);

/// argmin over j = 1..max_levels of |pseudo_frequency(j) - dominant_hz|,
/// ties to the smaller j.
int select_levels(double center_freq, double sample_period, double dominant_hz, int max_levels);

struct ScaleSelection {
    double center_frequency = 0.0;
    double dominant_frequency = 0.0;  // Hz
    double sample_period = 0.0;       // s
    int chosen_levels = 0;
    std::vector<double> pseudo_frequencies;  // Hz, index j-1
};

ScaleSelection select_scales(double center_freq, double sample_period, double dominant_hz,
                             int max_levels);

} // namespace wavematch
