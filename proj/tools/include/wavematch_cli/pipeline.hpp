#pragma once

#include "wavematch/filterbank.hpp"
#include "wavematch/matcher.hpp"
#include "wavematch/transform.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace wavematch::cli {

/// One unit of matching. A unit with several channels is scored by the mean
/// PRD over its channels and contributes a single minimum.
struct MatchUnit {
    std::string id;
    std::vector<Signal> channels;
};

struct MatchOptions {
    std::vector<double> crs{3.0, 5.0, 7.0, 10.0};
    GridSpec grid;
    bool refine = true;
    LevelsConfig levels;
    int workers = 1;
    bool all_surfaces = false;
    int shape_depth = 10;
    std::filesystem::path out_dir = ".";
};

struct UnitOutcome {
    std::string id;
    SurfacePoint grid_minimum;
    SurfacePoint minimum;  // refined when enabled
    std::array<double, 4> standard_prd{};  // indexed like kNamedWavelets
};

struct CrOutcome {
    double cr = 0.0;
    std::vector<UnitOutcome> units;
    MatchResult match;
    std::array<double, 4> correlation_vs{};  // optimum vs kNamedWavelets
};

struct MatchRun {
    std::vector<CrOutcome> per_cr;
    UnitResolution units;
    std::vector<std::filesystem::path> written;
};

/// Objective of a unit at a plane point (mean PRD across its channels).
double unit_prd(const MatchUnit& unit, const FilterPair& f, double cr, const LevelsConfig& levels);

/// Mean-over-channels surface of a unit.
PrdSurface unit_surface(const MatchUnit& unit, const MatchOptions& opts, double cr);

/// Surfaces, minima, aggregation and shape correlation for every requested
/// ratio. Writes surface_cr<cr>.csv/.json for the first unit (every unit with
/// all_surfaces), match.json and summary.txt into out_dir after all
/// computation has finished. Progress and warnings go to `log`.
MatchRun run_match(std::span<const MatchUnit> units, const MatchOptions& opts, std::ostream& log);

} // namespace wavematch::cli
