#include "wavematch_cli/pipeline.hpp"

#include "wavematch/errors.hpp"
#include "wavematch/format.hpp"
#include "wavematch/wavelet_shape.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace wavematch::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ordered_json number(double v) {
    return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

ordered_json point_json(const SurfacePoint& p) {
    return {{"a", number(p.a)}, {"b", number(p.b)}, {"prd_percent", number(p.prd)}};
}

ordered_json grid_json(const GridSpec& g) {
    return {{"a_range", {g.a.lo, g.a.hi}}, {"b_range", {g.b.lo, g.b.hi}}, {"resolution", g.resolution}};
}

std::string policy_name(LevelsPolicy p) {
    return p == LevelsPolicy::PerPoint ? "per_point" : "fixed";
}

ordered_json named_values(const std::array<double, 4>& values) {
    ordered_json out = ordered_json::object();
    for (std::size_t k = 0; k < 4; ++k) {
        out[std::string(short_name(kNamedWavelets[k]))] = number(values[k]);
    }
    return out;
}

struct Marker {
    NamedWavelet wavelet;
    PollenPoint point;
};

std::vector<Marker> standard_markers() {
    std::vector<Marker> out;
    for (NamedWavelet w : kNamedWavelets) {
        out.push_back({w, fit_plane_point(six_tap_embedding(w)).point});
    }
    return out;
}

ordered_json surface_json(const std::string& id, const PrdSurface& s, const SurfacePoint& minimum,
                          const std::vector<Marker>& markers) {
    ordered_json marks = ordered_json::object();
    for (const auto& m : markers) {
        marks[std::string(short_name(m.wavelet))] = {m.point.a, m.point.b};
    }
    return {{"recording", id},
            {"cr", s.cr},
            {"minimum", point_json(minimum)},
            {"grid_minimum", point_json(s.minimum)},
            {"grid", grid_json(s.grid)},
            {"levels_policy", policy_name(s.levels_policy)},
            {"missing", s.missing()},
            {"markers", marks}};
}

std::string file_token(double cr) {
    return format_double(cr);
}

void write_text(const std::filesystem::path& path, const std::string& text,
                std::vector<std::filesystem::path>& written) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.close();
    if (!out) {
        throw Error("failed to write " + path.string());
    }
    written.push_back(path);
}

} // namespace

double unit_prd(const MatchUnit& unit, const FilterPair& f, double cr, const LevelsConfig& levels) {
    if (unit.channels.empty()) {
        throw InvalidParameter("match unit '" + unit.id + "' has no channels");
    }
    double total = 0.0;
    for (const auto& ch : unit.channels) {
        total += evaluate_wavelet(ch, f, cr, levels);
    }
    return total / static_cast<double>(unit.channels.size());
}

PrdSurface unit_surface(const MatchUnit& unit, const MatchOptions& opts, double cr) {
    if (unit.channels.empty()) {
        throw InvalidParameter("match unit '" + unit.id + "' has no channels");
    }
    SurfaceOptions so{opts.grid, cr, opts.levels, opts.workers};
    PrdSurface surface = prd_surface(unit.channels.front(), so);
    if (unit.channels.size() == 1) {
        return surface;
    }
    for (std::size_t c = 1; c < unit.channels.size(); ++c) {
        const auto other = prd_surface(unit.channels[c], so);
        for (std::size_t k = 0; k < surface.values.size(); ++k) {
            surface.values[k] += other.values[k];  // NaN propagates
        }
    }
    for (double& v : surface.values) {
        v /= static_cast<double>(unit.channels.size());
    }
    try {
        surface.minimum = locate_minimum(surface);
    } catch (const NoMinimumError&) {
        surface.minimum = {kNaN, kNaN, kNaN};
    }
    return surface;
}

MatchRun run_match(std::span<const MatchUnit> units, const MatchOptions& opts, std::ostream& log) {
    if (units.empty()) {
        throw InvalidParameter("nothing to match: no recordings");
    }
    if (opts.crs.empty()) {
        throw InvalidParameter("no compression ratios requested");
    }
    opts.grid.validate();

    MatchRun run;
    run.units = resolve_published_units(opts.shape_depth);
    const auto markers = standard_markers();

    std::vector<WaveletShape> standard_shapes;
    for (NamedWavelet w : kNamedWavelets) {
        standard_shapes.push_back(wavelet_shape(WaveletSpec(w), opts.shape_depth));
    }

    struct PendingSurface {
        std::string id;
        PrdSurface surface;
        SurfacePoint minimum;
    };
    std::vector<PendingSurface> pending;

    for (double cr : opts.crs) {
        CrOutcome outcome;
        outcome.cr = cr;
        std::vector<PollenPoint> minima;
        for (std::size_t u = 0; u < units.size(); ++u) {
            const auto& unit = units[u];
            log << "cr " << format_double(cr) << ": surface for " << unit.id << '\n';
            auto surface = unit_surface(unit, opts, cr);
            const PlaneObjective objective = [&](PollenPoint p) {
                return unit_prd(unit, pollen_filter(p), cr, opts.levels);
            };
            UnitOutcome uo;
            uo.id = unit.id;
            uo.grid_minimum = locate_minimum(surface);
            uo.minimum = locate_minimum(surface, opts.refine, objective, RefineOptions{}, opts.workers);
            for (std::size_t k = 0; k < 4; ++k) {
                uo.standard_prd[k] = unit_prd(unit, standard_filter(kNamedWavelets[k]), cr, opts.levels);
            }
            minima.push_back(canonical_orientation({uo.minimum.a, uo.minimum.b}));
            if (u == 0 || opts.all_surfaces) {
                pending.push_back({unit.id, std::move(surface), uo.minimum});
            }
            outcome.units.push_back(std::move(uo));
        }

        const auto agg = aggregate(minima);
        if (agg.spread_warning) {
            log << "warning: cr " << format_double(cr)
                << ": minima differ by more than pi; the plain mean may be misleading\n";
        }
        outcome.match = {minima, agg.optimum, cr, agg.spread_warning};
        const auto optimum_shape = wavelet_shape(pollen_filter(agg.optimum), opts.shape_depth);
        for (std::size_t k = 0; k < 4; ++k) {
            outcome.correlation_vs[k] = correlate_shapes(optimum_shape, standard_shapes[k]);
        }
        run.per_cr.push_back(std::move(outcome));
    }

    // All computation is done; write artifacts.
    std::filesystem::create_directories(opts.out_dir);
    for (const auto& p : pending) {
        const bool representative = p.id == units.front().id;
        std::string stem = "surface_cr" + file_token(p.surface.cr);
        if (opts.all_surfaces && !representative) {
            stem += "_" + p.id;
        }
        write_text(opts.out_dir / (stem + ".csv"), surface_csv(p.surface), run.written);
        write_text(opts.out_dir / (stem + ".json"),
                   surface_json(p.id, p.surface, p.minimum, markers).dump(2) + "\n", run.written);
    }

    ordered_json reports = ordered_json::array();
    for (const auto& o : run.per_cr) {
        ordered_json per = ordered_json::array();
        for (std::size_t i = 0; i < o.units.size(); ++i) {
            const auto& u = o.units[i];
            per.push_back({{"id", u.id},
                           {"a", number(u.minimum.a)},
                           {"b", number(u.minimum.b)},
                           {"oriented", {{"a", o.match.per_recording_minima[i].a},
                                         {"b", o.match.per_recording_minima[i].b}}},
                           {"prd_percent", number(u.minimum.prd)},
                           {"grid_minimum", point_json(u.grid_minimum)},
                           {"standard_prd", named_values(u.standard_prd)}});
        }
        reports.push_back({{"cr", o.cr},
                           {"per_recording_minima", per},
                           {"optimum",
                            {{"a", o.match.optimum.a},
                             {"b", o.match.optimum.b},
                             {"a_over_pi", o.match.optimum.a / std::numbers::pi},
                             {"b_over_pi", o.match.optimum.b / std::numbers::pi}}},
                           {"spread_warning", o.match.spread_warning},
                           {"correlation_vs", named_values(o.correlation_vs)}});
    }
    const auto& res = run.units;
    const AngleUnits alt = res.units == AngleUnits::PiNormalized ? AngleUnits::Radians : AngleUnits::PiNormalized;
    ordered_json report = {
        {"angle_units", "radians"},
        {"table_units",
         {{"interpretation", angle_units_name(res.units)},
          {"canine_cr3_correlation_db3", res.canine_correlation},
          {"human_cr3_correlation_db3", res.human_correlation},
          {"rejected", {{"interpretation", angle_units_name(alt)},
                        {"canine_cr3_correlation_db3", res.canine_correlation_alt},
                        {"human_cr3_correlation_db3", res.human_correlation_alt}}}}},
        {"grid", grid_json(opts.grid)},
        {"refine", opts.refine},
        {"levels_policy", policy_name(opts.levels.policy)},
        {"reports", reports}};
    write_text(opts.out_dir / "match.json", report.dump(2) + "\n", run.written);

    std::ostringstream summary;
    summary << "wavelet match over " << units.size() << " recording(s), grid "
            << opts.grid.resolution << "x" << opts.grid.resolution
            << (opts.refine ? ", refined" : "") << "\n";
    for (const auto& o : run.per_cr) {
        summary << "\ncr " << format_double(o.cr) << ": optimum a*=" << format_double(o.match.optimum.a)
                << " b*=" << format_double(o.match.optimum.b) << " rad  (a*/pi="
                << format_double(o.match.optimum.a / std::numbers::pi)
                << ", b*/pi=" << format_double(o.match.optimum.b / std::numbers::pi) << ")\n";
        summary << "  correlation vs";
        for (std::size_t k = 0; k < 4; ++k) {
            summary << ' ' << short_name(kNamedWavelets[k]) << '=' << format_double(o.correlation_vs[k]);
        }
        summary << '\n';
        for (const auto& u : o.units) {
            summary << "  " << u.id << ": a=" << format_double(u.minimum.a) << " b=" << format_double(u.minimum.b)
                    << " prd=" << format_double(u.minimum.prd) << "%  (db3 " << format_double(u.standard_prd[2])
                    << "%)\n";
        }
    }
    summary << "\npublished optima read as " << angle_units_name(res.units)
            << " (db3 correlation canine " << format_double(res.canine_correlation) << ", human "
            << format_double(res.human_correlation) << ")\n";
    write_text(opts.out_dir / "summary.txt", summary.str(), run.written);
    return run;
}

} // namespace wavematch::cli
