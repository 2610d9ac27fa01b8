#pragma once

#include "wavematch/filterbank.hpp"
#include "wavematch/scales.hpp"
#include "wavematch/transform.hpp"

#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace wavematch {

inline constexpr int kDefaultGridResolution = 129;

struct AxisRange {
    double lo = -std::numbers::pi;
    double hi = std::numbers::pi;
};

/// Uniform resolution x resolution grid over a rectangle of the plane,
/// endpoints included.
struct GridSpec {
    AxisRange a;
    AxisRange b;
    int resolution = kDefaultGridResolution;

    /// Throws InvalidParameter unless resolution >= 2 and both ranges are
    /// finite, increasing and inside [-pi, pi].
    void validate() const;

    double a_step() const { return (a.hi - a.lo) / (resolution - 1); }
    double b_step() const { return (b.hi - b.lo) / (resolution - 1); }
    double a_at(int i) const { return i == resolution - 1 ? a.hi : a.lo + i * a_step(); }
    double b_at(int j) const { return j == resolution - 1 ? b.hi : b.lo + j * b_step(); }
    bool contains(double pa, double pb) const;
};

/// How J0 is chosen for each candidate wavelet.
enum class LevelsPolicy {
    PerPoint,  // from the candidate's own center frequency
    Fixed,     // the same J0 everywhere
};

struct LevelsConfig {
    LevelsPolicy policy = LevelsPolicy::PerPoint;
    int fixed_levels = 7;
    double dominant_hz = kCanineDominantCpm / 60.0;
};

/// J0 for filter f on a signal of length 2^max_levels sampled at sample_period.
int levels_for(const FilterPair& f, const LevelsConfig& cfg, double sample_period, int max_levels);

/// PRD (percent) of compressing x with wavelet w at ratio cr, J0 per cfg.
double evaluate_wavelet(const Signal& x, const FilterPair& f, double cr, const LevelsConfig& cfg);
double evaluate_wavelet(const Signal& x, const WaveletSpec& w, double cr, const LevelsConfig& cfg);

struct SurfacePoint {
    double a = 0.0;
    double b = 0.0;
    double prd = 0.0;
};

struct SurfaceOptions {
    GridSpec grid;
    double cr = 3.0;
    LevelsConfig levels;
    int workers = 1;
};

struct PrdSurface {
    GridSpec grid;
    std::vector<double> values;  // [i * resolution + j] for (a_at(i), b_at(j)); NaN = missing
    SurfacePoint minimum;        // grid minimum; NaN fields when every cell is missing
    double cr = 3.0;
    LevelsPolicy levels_policy = LevelsPolicy::PerPoint;

    double at(int i, int j) const { return values[static_cast<std::size_t>(i * grid.resolution + j)]; }
    std::size_t missing() const;
};

/// PRD at every grid point. Per-point failures become NaN cells; invalid
/// signal or grid throw. The matrix is identical for any worker count.
PrdSurface prd_surface(const Signal& x, const SurfaceOptions& opts);

/// Objective evaluated during refinement (normally evaluate_wavelet on a plane point).
using PlaneObjective = std::function<double(PollenPoint)>;

struct RefineOptions {
    int rounds = 3;
    int points_per_axis = 9;
    double shrink = 4.0;
};

/// Smallest finite grid value, ties to the lexicographically smaller (a, b).
/// Throws NoMinimumError if all cells are missing.
SurfacePoint locate_minimum(const PrdSurface& s);

/// As above; with refine set, runs nested grids centred on the incumbent,
/// each round's spacing the previous one divided by `shrink` (starting from
/// the surface grid step). Points outside the surface rectangle are skipped.
/// The incumbent is only replaced by strictly smaller values, or equal values
/// at a lexicographically smaller (a, b).
SurfacePoint locate_minimum(const PrdSurface& s, bool refine, const PlaneObjective& objective,
                            RefineOptions opts = {}, int workers = 1);

struct AggregateResult {
    PollenPoint optimum;
    bool spread_warning = false;  // some pair of minima differs by more than pi in a coordinate
};

/// Component-wise arithmetic mean (no angular wrap-around). Throws
/// InvalidParameter on an empty list.
AggregateResult aggregate(std::span<const PollenPoint> minima);

struct MatchResult {
    std::vector<PollenPoint> per_recording_minima;
    PollenPoint optimum;
    double cr = 3.0;
    bool spread_warning = false;
};

/// Reported optimal parameterizations by species and compression ratio, as
/// printed (unit-less numbers).
struct PublishedOptimum {
    Species species;
    double cr;
    double a;
    double b;
};

std::span<const PublishedOptimum> published_optima();

enum class AngleUnits { Radians, PiNormalized };

std::string_view angle_units_name(AngleUnits u);
PollenPoint to_plane_point(double a, double b, AngleUnits units);

/// Correlation of the cr = 3 published optima with Daubechies-3 under both
/// unit readings; `units` is the reading whose correlations are higher.
struct UnitResolution {
    AngleUnits units = AngleUnits::PiNormalized;
    double canine_correlation = 0.0;
    double human_correlation = 0.0;
    double canine_correlation_alt = 0.0;  // other reading
    double human_correlation_alt = 0.0;
};

UnitResolution resolve_published_units(int depth = 10);

/// CSV "a,b,prd_percent", one row per grid point in storage order.
std::string surface_csv(const PrdSurface& s);

} // namespace wavematch
