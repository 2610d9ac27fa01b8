#include "wavematch/scales.hpp"

#include "fft.hpp"
#include "wavematch/errors.hpp"
#include "wavematch/wavelet_shape.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace wavematch {

double dominant_cpm(Species s) {
    return s == Species::Canine ? kCanineDominantCpm : kHumanDominantCpm;
}

std::string_view species_name(Species s) {
    return s == Species::Canine ? "canine" : "human";
}

Species parse_species(std::string_view text) {
    if (text == "canine") {
        return Species::Canine;
    }
    if (text == "human") {
        return Species::Human;
    }
    throw InvalidParameter("unknown species '" + std::string(text) + "'");
}

double center_frequency(const FilterPair& f, int depth) {
    auto psi = cascade_wavelet(f, depth);
    const double mean = std::accumulate(psi.begin(), psi.end(), 0.0) / static_cast<double>(psi.size());
    double energy = 0.0;
    for (double& v : psi) {
        v -= mean;
        energy += v * v;
    }
    if (!(energy > 0.0) || !std::isfinite(energy)) {
        throw NumericalError("center frequency undefined for a zero-energy wavelet");
    }

    const auto magnitude = detail::dft_magnitude(psi);
    const double window = static_cast<double>(psi.size()) * std::ldexp(1.0, -depth);
    // peak searched over 0 < f < L
    const double limit = static_cast<double>(f.h.size()) * window;
    std::size_t peak = 1;
    for (std::size_t k = 2; k < magnitude.size() && static_cast<double>(k) < limit; ++k) {
        if (magnitude[k] > magnitude[peak]) {
            peak = k;
        }
    }
    return static_cast<double>(peak) / window;
}

double center_frequency(const WaveletSpec& w, int depth) {
    return center_frequency(make_filter(w), depth);
}

double pseudo_frequency(double center_freq, double sample_period, int level) {
    return center_freq / (std::ldexp(1.0, level) * sample_period);
}

int select_levels(double center_freq, double sample_period, double dominant_hz, int max_levels) {
    if (!(center_freq > 0.0) || !(sample_period > 0.0) || !(dominant_hz > 0.0) || max_levels < 1) {
        throw InvalidParameter("scale selection needs positive frequencies, period and level count");
    }
    int best = 1;
    double best_gap = std::abs(pseudo_frequency(center_freq, sample_period, 1) - dominant_hz);
    for (int j = 2; j <= max_levels; ++j) {
        const double gap = std::abs(pseudo_frequency(center_freq, sample_period, j) - dominant_hz);
        if (gap < best_gap) {
            best = j;
            best_gap = gap;
        }
    }
    return best;
}

ScaleSelection select_scales(double center_freq, double sample_period, double dominant_hz,
                             int max_levels) {
    ScaleSelection s;
    s.center_frequency = center_freq;
    s.dominant_frequency = dominant_hz;
    s.sample_period = sample_period;
    s.chosen_levels = select_levels(center_freq, sample_period, dominant_hz, max_levels);
    for (int j = 1; j <= max_levels; ++j) {
        s.pseudo_frequencies.push_back(pseudo_frequency(center_freq, sample_period, j));
    }
    return s;
}

} // namespace wavematch
