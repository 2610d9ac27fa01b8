#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wavematch {

/// A point of the two-angle parameterization plane of 6-tap orthonormal
/// filters. Both angles are radians in [-pi, pi]; use make_pollen_point to
/// wrap arbitrary finite input into that square.
struct PollenPoint {
    double a = 0.0;
    double b = 0.0;

    friend bool operator==(const PollenPoint&, const PollenPoint&) = default;
};

/// Wraps (a, b) modulo 2*pi into [-pi, pi]. Throws InvalidParameter on NaN/inf.
PollenPoint make_pollen_point(double a, double b);

/// (-a, -b) yields the time-reversed filter of (a, b): the same wavelet up to
/// reflection. Returns the representative with a >= 0 (b >= 0 when a == 0).
PollenPoint canonical_orientation(PollenPoint p);

enum class NamedWavelet { Haar, Daubechies2, Daubechies3, Coiflet1 };

inline constexpr NamedWavelet kNamedWavelets[] = {
    NamedWavelet::Haar, NamedWavelet::Daubechies2, NamedWavelet::Daubechies3,
    NamedWavelet::Coiflet1};

/// Short identifier used in files and on the command line ("haar", "db2", ...).
std::string_view short_name(NamedWavelet w);

/// Either a named standard wavelet or a plane point.
class WaveletSpec {
public:
    WaveletSpec(NamedWavelet w) : variant_(w) {}
    WaveletSpec(PollenPoint p) : variant_(p) {}

    bool is_named() const { return std::holds_alternative<NamedWavelet>(variant_); }
    NamedWavelet named() const { return std::get<NamedWavelet>(variant_); }
    PollenPoint point() const { return std::get<PollenPoint>(variant_); }

    /// "haar", "db2", "db3", "coif1" or "pollen:<a>,<b>" (radians).
    std::string to_string() const;

    /// Inverse of to_string. Angles given as "pollen:0.4329pi,-0.2608pi" are
    /// scaled by pi. Throws InvalidParameter on anything else.
    static WaveletSpec parse(std::string_view text);

    friend bool operator==(const WaveletSpec&, const WaveletSpec&) = default;

private:
    std::variant<NamedWavelet, PollenPoint> variant_;
};

/// Orthonormal two-channel FIR pair. h is the low-pass (scaling) filter and g
/// its quadrature mirror, both of length 2, 4 or 6.
struct FilterPair {
    std::vector<double> h;
    std::vector<double> g;

    std::size_t size() const { return h.size(); }
};

/// g_k = (-1)^k h_{L-1-k}. Throws InvalidParameter for empty or odd-length h.
std::vector<double> qmf(std::span<const double> h);

/// Published coefficients (closed forms) at native length.
FilterPair standard_filter(NamedWavelet w);

/// Six-tap filter for a plane point. The diagonal a == b yields the Haar
/// filter embedded as [0, 0, 1, 1, 0, 0] / sqrt(2).
FilterPair pollen_filter(PollenPoint p);

FilterPair make_filter(const WaveletSpec& spec);

/// Worst absolute violation of each orthonormality condition.
struct OrthonormalityReport {
    double dc_gain = 0.0;        // |sum h - sqrt2|
    double unit_energy = 0.0;    // |sum h^2 - 1|
    double double_shift = 0.0;   // max_m>0 |sum h_k h_{k+2m}|
    double highpass_dc = 0.0;    // |sum g|
    double mirror = 0.0;         // max |g - qmf(h)|

    double worst() const;
};

OrthonormalityReport check_orthonormality(const FilterPair& f);

/// CSV dump with header "k,h_k,g_k".
std::string filter_csv(const FilterPair& f);

} // namespace wavematch

namespace wavematch {

/// Six-tap form of a named wavelet with the native taps centred
/// (Haar -> [0, 0, h0, h1, 0, 0], Daubechies-2 -> [0, h0..h3, 0]).
std::vector<double> six_tap_embedding(NamedWavelet w);

struct PlaneFit {
    PollenPoint point;
    double max_abs_error = 0.0;
};

/// Nested grid search for the plane point whose low-pass filter is closest
/// in max-abs distance to a six-tap target.
PlaneFit fit_plane_point(std::span<const double> target);

} // namespace wavematch
