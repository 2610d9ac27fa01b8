#include "wavematch_cli/synth.hpp"

#include "wavematch/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace wavematch::cli {

SyntheticSpec synthetic_preset(Species species) {
    SyntheticSpec spec;
    spec.dominant_cpm = dominant_cpm(species);
    spec.duration_s = 410.0;
    return spec;
}

void validate(const SyntheticSpec& spec) {
    if (!(spec.dominant_cpm > 0.0) || !std::isfinite(spec.dominant_cpm)) {
        throw InvalidParameter("dominant rate must be positive");
    }
    if (!(spec.noise_level >= 0.0) || !std::isfinite(spec.noise_level)) {
        throw InvalidParameter("noise level must be >= 0");
    }
    for (double amp : spec.harmonics) {
        if (!std::isfinite(amp)) {
            throw InvalidParameter("harmonic amplitudes must be finite");
        }
    }
    if (spec.required_levels < 1 || spec.required_levels > 30) {
        throw InvalidParameter("required levels must lie in [1, 30]");
    }
    const double needed = 2.0 * std::ldexp(1.0, spec.required_levels);
    if (!std::isfinite(spec.duration_s) || spec.duration_s * kSyntheticRateHz < needed) {
        throw InvalidParameter("duration too short: need at least " + std::to_string(needed) + " samples");
    }
}

Signal synthesize(const SyntheticSpec& spec) {
    validate(spec);
    const auto n = static_cast<std::size_t>(std::floor(spec.duration_s * kSyntheticRateHz));
    const double period = 1.0 / kSyntheticRateHz;
    const double omega = 2.0 * std::numbers::pi * spec.dominant_cpm / 60.0;

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
    const double base_phase = phase_dist(rng);
    std::vector<double> harmonic_phase(spec.harmonics.size());
    for (double& p : harmonic_phase) {
        p = phase_dist(rng);
    }

    Signal x;
    x.sample_period = period;
    x.samples.resize(n);
    double power = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * period;
        double v = std::sin(omega * t + base_phase);
        for (std::size_t h = 0; h < spec.harmonics.size(); ++h) {
            v += spec.harmonics[h] * std::sin(static_cast<double>(h + 2) * omega * t + harmonic_phase[h]);
        }
        x.samples[i] = v;
        power += v * v;
    }

    if (spec.noise_level > 0.0) {
        const double sigma = spec.noise_level * std::sqrt(power / static_cast<double>(n));
        std::normal_distribution<double> noise(0.0, sigma);
        for (double& v : x.samples) {
            v += noise(rng);
        }
    }
    return x;
}

} // namespace wavematch::cli
