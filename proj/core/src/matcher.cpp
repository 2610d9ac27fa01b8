#include "wavematch/matcher.hpp"

#include "parallel.hpp"
#include "wavematch/compress.hpp"
#include "wavematch/errors.hpp"
#include "wavematch/format.hpp"
#include "wavematch/wavelet_shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace wavematch {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool better(const SurfacePoint& candidate, const SurfacePoint& incumbent) {
    if (!std::isfinite(candidate.prd)) {
        return false;
    }
    if (!std::isfinite(incumbent.prd) || candidate.prd < incumbent.prd) {
        return true;
    }
    return candidate.prd == incumbent.prd &&
           (candidate.a < incumbent.a || (candidate.a == incumbent.a && candidate.b < incumbent.b));
}

void check_signal(const Signal& x) {
    exact_log2(x.size());
    if (!(x.sample_period > 0.0) || !std::isfinite(x.sample_period)) {
        throw InvalidParameter("sample period must be positive");
    }
    double energy = 0.0;
    for (double v : x.samples) {
        if (!std::isfinite(v)) {
            throw ShapeError("signal contains non-finite samples");
        }
        energy += v * v;
    }
    if (!(energy > 0.0)) {
        throw NumericalError("signal has zero energy");
    }
}

} // namespace

void GridSpec::validate() const {
    if (resolution < 2) {
        throw InvalidParameter("grid resolution must be >= 2");
    }
    for (const AxisRange& r : {a, b}) {
        if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi) || r.lo < -kPi ||
            r.hi > kPi) {
            throw InvalidParameter("grid ranges must be non-degenerate intervals inside [-pi, pi]");
        }
    }
}

bool GridSpec::contains(double pa, double pb) const {
    return pa >= a.lo && pa <= a.hi && pb >= b.lo && pb <= b.hi;
}

int levels_for(const FilterPair& f, const LevelsConfig& cfg, double sample_period, int max_levels) {
    if (cfg.policy == LevelsPolicy::Fixed) {
        if (cfg.fixed_levels < 1 || cfg.fixed_levels > max_levels) {
            throw PlanError("fixed decomposition depth outside [1, log2 N]");
        }
        return cfg.fixed_levels;
    }
    return select_levels(center_frequency(f), sample_period, cfg.dominant_hz, max_levels);
}

double evaluate_wavelet(const Signal& x, const FilterPair& f, double cr, const LevelsConfig& cfg) {
    const int levels = levels_for(f, cfg, x.sample_period, exact_log2(x.size()));
    return compress_and_measure(x.samples, f, {levels}, {cr}).prd_percent;
}

double evaluate_wavelet(const Signal& x, const WaveletSpec& w, double cr, const LevelsConfig& cfg) {
    return evaluate_wavelet(x, make_filter(w), cr, cfg);
}

std::size_t PrdSurface::missing() const {
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [](double v) { return std::isnan(v); }));
}

PrdSurface prd_surface(const Signal& x, const SurfaceOptions& opts) {
    opts.grid.validate();
    check_signal(x);
    retained_count(x.size(), opts.cr);  // validates cr
    if (opts.levels.policy == LevelsPolicy::Fixed) {
        levels_for(FilterPair{}, opts.levels, x.sample_period, exact_log2(x.size()));
    }

    PrdSurface s;
    s.grid = opts.grid;
    s.cr = opts.cr;
    s.levels_policy = opts.levels.policy;
    const int res = opts.grid.resolution;
    s.values.assign(static_cast<std::size_t>(res) * static_cast<std::size_t>(res), kNaN);

    detail::parallel_for(s.values.size(), opts.workers, [&](std::size_t idx) {
        const int i = static_cast<int>(idx / static_cast<std::size_t>(res));
        const int j = static_cast<int>(idx % static_cast<std::size_t>(res));
        try {
            const auto f = pollen_filter({opts.grid.a_at(i), opts.grid.b_at(j)});
            s.values[idx] = evaluate_wavelet(x, f, opts.cr, opts.levels);
        } catch (const Error&) {
            s.values[idx] = kNaN;
        }
    });

    try {
        s.minimum = locate_minimum(s);
    } catch (const NoMinimumError&) {
        s.minimum = {kNaN, kNaN, kNaN};
    }
    return s;
}

SurfacePoint locate_minimum(const PrdSurface& s) {
    const int res = s.grid.resolution;
    SurfacePoint best{kNaN, kNaN, kNaN};
    for (int i = 0; i < res; ++i) {
        for (int j = 0; j < res; ++j) {
            const SurfacePoint candidate{s.grid.a_at(i), s.grid.b_at(j), s.at(i, j)};
            if (better(candidate, best)) {
                best = candidate;
            }
        }
    }
    if (!std::isfinite(best.prd)) {
        throw NoMinimumError("surface has no finite value");
    }
    return best;
}

SurfacePoint locate_minimum(const PrdSurface& s, bool refine, const PlaneObjective& objective,
                            RefineOptions opts, int workers) {
    SurfacePoint best = locate_minimum(s);
    if (!refine) {
        return best;
    }
    if (!objective) {
        throw InvalidParameter("refinement needs an objective");
    }
    if (opts.rounds < 0 || opts.points_per_axis < 3 || opts.points_per_axis % 2 == 0 ||
        !(opts.shrink > 1.0)) {
        throw InvalidParameter("refinement needs an odd point count >= 3 and shrink > 1");
    }

    const int half = opts.points_per_axis / 2;
    double step_a = s.grid.a_step();
    double step_b = s.grid.b_step();
    std::vector<SurfacePoint> candidates;
    for (int round = 0; round < opts.rounds; ++round) {
        step_a /= opts.shrink;
        step_b /= opts.shrink;
        candidates.clear();
        for (int u = -half; u <= half; ++u) {
            for (int v = -half; v <= half; ++v) {
                if (u == 0 && v == 0) {
                    continue;
                }
                const double a = best.a + u * step_a;
                const double b = best.b + v * step_b;
                if (s.grid.contains(a, b)) {
                    candidates.push_back({a, b, kNaN});
                }
            }
        }
        detail::parallel_for(candidates.size(), workers, [&](std::size_t k) {
            try {
                candidates[k].prd = objective({candidates[k].a, candidates[k].b});
            } catch (const Error&) {
                candidates[k].prd = kNaN;
            }
        });
        for (const auto& c : candidates) {
            if (better(c, best)) {
                best = c;
            }
        }
    }
    return best;
}

AggregateResult aggregate(std::span<const PollenPoint> minima) {
    if (minima.empty()) {
        throw InvalidParameter("cannot aggregate an empty list of minima");
    }
    double sum_a = 0.0;
    double sum_b = 0.0;
    auto [min_a, max_a] = std::minmax_element(minima.begin(), minima.end(),
        [](const PollenPoint& l, const PollenPoint& r) { return l.a < r.a; });
    auto [min_b, max_b] = std::minmax_element(minima.begin(), minima.end(),
        [](const PollenPoint& l, const PollenPoint& r) { return l.b < r.b; });
    for (const auto& p : minima) {
        sum_a += p.a;
        sum_b += p.b;
    }
    const auto n = static_cast<double>(minima.size());
    AggregateResult r;
    r.optimum = {sum_a / n, sum_b / n};
    r.spread_warning = (max_a->a - min_a->a > kPi) || (max_b->b - min_b->b > kPi);
    return r;
}

std::span<const PublishedOptimum> published_optima() {
    static constexpr PublishedOptimum kTable[] = {
        {Species::Canine, 3.0, 0.4329, -0.2608},  {Species::Canine, 5.0, 0.4323, -0.2638},
        {Species::Canine, 7.0, 0.4323, -0.2700},  {Species::Canine, 10.0, 0.4293, -0.2736},
        {Species::Human, 3.0, 0.3976, -0.2335},   {Species::Human, 5.0, 0.4293, -0.2550},
        {Species::Human, 7.0, 0.4276, -0.2551},   {Species::Human, 10.0, 0.4279, -0.2600},
    };
    return kTable;
}

std::string_view angle_units_name(AngleUnits u) {
    return u == AngleUnits::Radians ? "radians" : "pi_normalized";
}

PollenPoint to_plane_point(double a, double b, AngleUnits units) {
    const double scale = units == AngleUnits::PiNormalized ? kPi : 1.0;
    return make_pollen_point(a * scale, b * scale);
}

UnitResolution resolve_published_units(int depth) {
    const auto reference = wavelet_shape(WaveletSpec(NamedWavelet::Daubechies3), depth);
    const auto correlation = [&](Species species, AngleUnits units) {
        for (const auto& row : published_optima()) {
            if (row.species == species && row.cr == 3.0) {
                const auto shape = wavelet_shape(pollen_filter(to_plane_point(row.a, row.b, units)), depth);
                return correlate_shapes(shape, reference);
            }
        }
        throw InvalidParameter("missing published optimum");
    };

    const double canine_pi = correlation(Species::Canine, AngleUnits::PiNormalized);
    const double human_pi = correlation(Species::Human, AngleUnits::PiNormalized);
    const double canine_rad = correlation(Species::Canine, AngleUnits::Radians);
    const double human_rad = correlation(Species::Human, AngleUnits::Radians);

    UnitResolution r;
    if (canine_pi + human_pi >= canine_rad + human_rad) {
        r = {AngleUnits::PiNormalized, canine_pi, human_pi, canine_rad, human_rad};
    } else {
        r = {AngleUnits::Radians, canine_rad, human_rad, canine_pi, human_pi};
    }
    return r;
}

std::string surface_csv(const PrdSurface& s) {
    std::ostringstream out;
    out << "a,b,prd_percent\n";
    const int res = s.grid.resolution;
    for (int i = 0; i < res; ++i) {
        for (int j = 0; j < res; ++j) {
            out << format_double(s.grid.a_at(i)) << ',' << format_double(s.grid.b_at(j)) << ','
                << format_double(s.at(i, j)) << '\n';
        }
    }
    return out.str();
}

} // namespace wavematch
