#include "wavematch_cli/commands.hpp"

#include "wavematch/compress.hpp"
#include "wavematch/errors.hpp"
#include "wavematch/format.hpp"
#include "wavematch/matcher.hpp"
#include "wavematch/scales.hpp"
#include "wavematch/wavelet_shape.hpp"
#include "wavematch_cli/config.hpp"
#include "wavematch_cli/pipeline.hpp"
#include "wavematch_cli/recording.hpp"
#include "wavematch_cli/synth.hpp"

#include <CLI11.hpp>

#include <bit>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace wavematch::cli {

namespace {

struct InputOptions {
    std::vector<std::string> files;
    std::vector<std::string> channels;
    std::string segment;
};

struct FrequencyOptions {
    std::string species = "canine";
    std::optional<double> fc_cpm;
    double sample_period = kDefaultSamplePeriod;

    double dominant_cpm_value() const {
        return fc_cpm ? *fc_cpm : dominant_cpm(parse_species(species));
    }
};

struct GenOptions {
    FrequencyOptions freq;
    std::uint64_t seed = 1;
    int count = 1;
    int num_channels = 1;
    std::optional<double> duration;
    double noise = 0.2;
    std::string out_dir = ".";
};

struct ScalesOptions {
    FrequencyOptions freq;
    std::vector<std::string> wavelets;
    int max_levels = 12;
};

struct CompressOptions {
    InputOptions input;
    FrequencyOptions freq;
    std::string wavelet = "db3";
    std::vector<double> crs{3.0, 5.0, 7.0, 10.0};
    int levels = 0;
    std::string dump_coeffs;
};

struct SurfaceMatchOptions {
    InputOptions input;
    FrequencyOptions freq;
    std::vector<double> crs{3.0, 5.0, 7.0, 10.0};
    int grid = kDefaultGridResolution;
    bool refine = true;
    int fixed_levels = 0;
    std::string out_dir = ".";
    std::string per = "channel";
    bool all_surfaces = false;
    int synthetic = 0;
    std::uint64_t seed = 1;
};

struct WavefunOptions {
    std::string wavelet = "db3";
    int depth = kDefaultShapeDepth;
    std::string out;
    bool filter = false;
};

void add_frequency_options(CLI::App* sub, FrequencyOptions& f) {
    sub->add_option("--species", f.species, "canine (5 cpm) or human (3 cpm)")
        ->check(CLI::IsMember({"canine", "human"}));
    sub->add_option("--fc-cpm", f.fc_cpm, "Dominant frequency in cycles per minute (overrides --species)")
        ->check(CLI::PositiveNumber);
}

void add_input_options(CLI::App* sub, InputOptions& in, bool required) {
    auto* files = sub->add_option("recordings", in.files, "Recording CSV files");
    if (required) {
        files->required();
    }
    sub->add_option("--channels", in.channels, "Channel names or zero-based indices")->delimiter(',');
    sub->add_option("--segment", in.segment, "Sample window start:end applied before trimming");
}

std::pair<std::size_t, std::size_t> parse_segment(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw InvalidParameter("segment must look like start:end");
    }
    const auto parse = [](std::string_view s) {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw InvalidParameter("segment bounds must be non-negative integers");
        }
        return v;
    };
    return {parse(std::string_view(text).substr(0, colon)), parse(std::string_view(text).substr(colon + 1))};
}

/// Loads, cuts, selects and centre-trims every channel.
std::vector<RecordingFile> load_inputs(const InputOptions& in, std::ostream& err) {
    std::vector<RecordingFile> out;
    for (const auto& path : in.files) {
        auto rec = load_recording(path);
        if (!in.segment.empty()) {
            const auto [begin, end] = parse_segment(in.segment);
            rec = cut_segment(rec, begin, end);
        }
        rec = select_channels(rec, in.channels);
        for (auto& ch : rec.channels) {
            if (!std::has_single_bit(ch.signal.size())) {
                TrimWindow w;
                ch.signal = center_trim(ch.signal, &w);
                err << path << ": channel " << ch.name << " trimmed to samples [" << rec.segment_begin + w.begin
                    << ", " << rec.segment_begin + w.end << ") (" << w.size() << " samples)\n";
            }
        }
        out.push_back(std::move(rec));
    }
    return out;
}

LevelsConfig levels_config(const FrequencyOptions& freq, int fixed_levels) {
    LevelsConfig cfg;
    cfg.dominant_hz = freq.dominant_cpm_value() / 60.0;
    if (fixed_levels > 0) {
        cfg.policy = LevelsPolicy::Fixed;
        cfg.fixed_levels = fixed_levels;
    }
    return cfg;
}

std::vector<MatchUnit> build_units(const SurfaceMatchOptions& o, std::ostream& err) {
    std::vector<MatchUnit> units;
    if (o.synthetic > 0) {
        auto spec = synthetic_preset(parse_species(o.freq.species));
        if (o.freq.fc_cpm) {
            spec.dominant_cpm = *o.freq.fc_cpm;
        }
        for (int k = 0; k < o.synthetic; ++k) {
            spec.seed = o.seed + static_cast<std::uint64_t>(k);
            TrimWindow w;
            auto x = center_trim(synthesize(spec), &w);
            std::ostringstream id;
            id << "syn" << std::setw(2) << std::setfill('0') << k + 1;
            units.push_back({id.str(), {std::move(x)}});
        }
        err << "generated " << o.synthetic << " synthetic recording(s), " << units.front().channels.front().size()
            << " samples each\n";
        return units;
    }
    for (const auto& rec : load_inputs(o.input, err)) {
        if (o.per == "subject") {
            MatchUnit unit{rec.subject_id, {}};
            for (const auto& ch : rec.channels) {
                unit.channels.push_back(ch.signal);
            }
            units.push_back(std::move(unit));
        } else {
            for (const auto& ch : rec.channels) {
                units.push_back({rec.subject_id + ":" + ch.name, {ch.signal}});
            }
        }
    }
    return units;
}

int cmd_gen(const GenOptions& o, std::ostream& out, std::ostream& err) {
    const Species species = parse_species(o.freq.species);
    auto spec = synthetic_preset(species);
    if (o.freq.fc_cpm) {
        spec.dominant_cpm = *o.freq.fc_cpm;
    }
    if (o.duration) {
        spec.duration_s = *o.duration;
    }
    spec.noise_level = o.noise;
    std::filesystem::create_directories(o.out_dir);
    for (int k = 0; k < o.count; ++k) {
        RecordingFile rec;
        rec.species = species;
        std::ostringstream id;
        id << "syn" << std::setw(2) << std::setfill('0') << k + 1;
        rec.subject_id = id.str();
        rec.sample_period = 1.0 / kSyntheticRateHz;
        for (int c = 0; c < o.num_channels; ++c) {
            spec.seed = o.seed + static_cast<std::uint64_t>(k * o.num_channels + c);
            rec.channels.push_back({"ch" + std::to_string(c + 1), synthesize(spec)});
        }
        const auto path = std::filesystem::path(o.out_dir) / (rec.subject_id + ".csv");
        std::ofstream file(path, std::ios::binary);
        write_recording_csv(file, rec);
        file.close();
        if (!file) {
            err << "error: failed to write " << path << '\n';
            return 1;
        }
        out << path.string() << '\n';
    }
    return 0;
}

int cmd_scales(const ScalesOptions& o, std::ostream& out) {
    std::vector<WaveletSpec> specs;
    if (o.wavelets.empty() || (o.wavelets.size() == 1 && o.wavelets.front() == "all")) {
        specs.assign(std::begin(kNamedWavelets), std::end(kNamedWavelets));
    } else {
        for (const auto& w : o.wavelets) {
            specs.push_back(WaveletSpec::parse(w));
        }
    }
    const double fc_cpm = o.freq.dominant_cpm_value();
    out << "dominant frequency " << format_double(fc_cpm) << " cpm, sampling period "
        << format_double(o.freq.sample_period) << " s\n";
    out << std::left << std::setw(10) << "wavelet" << std::setw(10) << "f_psi" << std::setw(5) << "J0"
        << "f_pseudo per level j=1.." << o.max_levels << " (cpm)\n";
    for (const auto& w : specs) {
        const double fpsi = center_frequency(w);
        const auto sel = select_scales(fpsi, o.freq.sample_period, fc_cpm / 60.0, o.max_levels);
        out << std::left << std::setw(9) << w.to_string() << ' ' << std::setw(10) << std::fixed << std::setprecision(4)
            << fpsi << std::setw(5) << sel.chosen_levels;
        for (double f : sel.pseudo_frequencies) {
            out << ' ' << std::setprecision(3) << f * 60.0;
        }
        out << '\n' << std::defaultfloat;
    }
    for (const auto& w : specs) {
        const auto sel = select_scales(center_frequency(w), o.freq.sample_period, fc_cpm / 60.0, o.max_levels);
        out << w.to_string() << ": J0=" << sel.chosen_levels << '\n';
    }
    return 0;
}

int cmd_compress(const CompressOptions& o, std::ostream& out, std::ostream& err) {
    const auto wavelet = WaveletSpec::parse(o.wavelet);
    const auto filter = make_filter(wavelet);
    const auto recs = load_inputs(o.input, err);
    const auto cfg = levels_config(o.freq, o.levels);
    bool dumped = false;
    for (const auto& rec : recs) {
        for (const auto& ch : rec.channels) {
            const int max_levels = exact_log2(ch.signal.size());
            const int levels = levels_for(filter, cfg, ch.signal.sample_period, max_levels);
            out << "# " << rec.subject_id << ':' << ch.name << " wavelet=" << wavelet.to_string()
                << " J0=" << levels << " periodogram_peak_cpm=" << format_double(dominant_cpm_estimate(ch.signal))
                << '\n';
            out << compression_csv_header() << '\n';
            for (double cr : o.crs) {
                out << to_csv_row(compress_and_measure(ch.signal.samples, filter, {levels}, {cr})) << '\n';
            }
            if (!o.dump_coeffs.empty() && !dumped) {
                std::ofstream file(o.dump_coeffs, std::ios::binary);
                file << coeffs_csv(dwt(ch.signal.samples, filter, {levels}));
                file.close();
                if (!file) {
                    err << "error: failed to write " << o.dump_coeffs << '\n';
                    return 1;
                }
                dumped = true;
            }
        }
    }
    return 0;
}

MatchOptions match_options(const SurfaceMatchOptions& o) {
    MatchOptions m;
    m.crs = o.crs;
    m.grid.resolution = o.grid;
    m.refine = o.refine;
    m.levels = levels_config(o.freq, o.fixed_levels);
    m.workers = workers_from_env();
    m.all_surfaces = o.all_surfaces;
    m.out_dir = o.out_dir;
    return m;
}

int cmd_surface(const SurfaceMatchOptions& o, std::ostream& out, std::ostream& err) {
    if (o.crs.size() != 1) {
        err << "error: surface takes exactly one --cr value\n";
        return 2;
    }
    auto units = build_units(o, err);
    if (units.size() > 1) {
        // one surface per invocation: pool the selected channels of the first recording
        MatchUnit pooled{units.front().id, {}};
        for (const auto& u : units) {
            pooled.channels.insert(pooled.channels.end(), u.channels.begin(), u.channels.end());
        }
        units = {pooled};
    }
    const auto opts = match_options(o);
    const double cr = o.crs.front();
    const auto surface = unit_surface(units.front(), opts, cr);
    const PlaneObjective objective = [&](PollenPoint p) {
        return unit_prd(units.front(), pollen_filter(p), cr, opts.levels);
    };
    const auto best = locate_minimum(surface, o.refine, objective, RefineOptions{}, opts.workers);

    std::filesystem::create_directories(o.out_dir);
    const auto stem = std::filesystem::path(o.out_dir) / ("surface_cr" + format_double(cr));
    {
        std::ofstream csv(stem.string() + ".csv", std::ios::binary);
        csv << surface_csv(surface);
        std::ofstream json(stem.string() + ".json", std::ios::binary);
        json << "{\n  \"recording\": \"" << units.front().id << "\",\n  \"cr\": " << format_double(cr)
             << ",\n  \"minimum\": {\"a\": " << format_double(best.a) << ", \"b\": " << format_double(best.b)
             << ", \"prd_percent\": " << format_double(best.prd) << "},\n  \"grid\": {\"a_range\": ["
             << format_double(surface.grid.a.lo) << ", " << format_double(surface.grid.a.hi)
             << "], \"b_range\": [" << format_double(surface.grid.b.lo) << ", "
             << format_double(surface.grid.b.hi) << "], \"resolution\": " << surface.grid.resolution << "}\n}\n";
        if (!csv || !json) {
            err << "error: failed to write surface files\n";
            return 1;
        }
    }
    out << "minimum a=" << format_double(best.a) << " b=" << format_double(best.b)
        << " prd=" << format_double(best.prd) << "%\n";
    return 0;
}

int cmd_match(const SurfaceMatchOptions& o, std::ostream& out, std::ostream& err) {
    const auto units = build_units(o, err);
    const auto run = run_match(units, match_options(o), err);
    for (const auto& path : run.written) {
        out << path.string() << '\n';
    }
    return 0;
}

int cmd_wavefun(const WavefunOptions& o, std::ostream& out, std::ostream& err) {
    const auto spec = WaveletSpec::parse(o.wavelet);
    const auto filter = make_filter(spec);
    if (o.filter) {
        out << filter_csv(filter);
    }
    const auto shape = wavelet_shape(filter, o.depth);
    out << "wavelet " << spec.to_string() << " center_frequency=" << format_double(center_frequency(filter)) << '\n';
    for (NamedWavelet w : kNamedWavelets) {
        out << "correlation_vs_" << short_name(w) << '='
            << format_double(correlate_shapes(shape, wavelet_shape(WaveletSpec(w), o.depth))) << '\n';
    }
    if (!o.out.empty()) {
        std::ofstream file(o.out, std::ios::binary);
        file << "x,psi\n";
        for (std::size_t i = 0; i < shape.samples.size(); ++i) {
            file << format_double(static_cast<double>(i) * shape.grid_step) << ','
                 << format_double(shape.samples[i]) << '\n';
        }
        file.close();
        if (!file) {
            err << "error: failed to write " << o.out << '\n';
            return 1;
        }
    }
    return 0;
}

} // namespace

int workers_from_env() {
    if (const char* env = std::getenv(kWorkersEnv)) {
        int value = 0;
        const std::string_view text(env);
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc() && ptr == text.data() + text.size() && value > 0) {
            return value;
        }
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Search the six-tap orthonormal wavelet plane for the wavelet that best compresses slow-wave recordings"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key=value file; explicit flags take precedence");

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Write seeded synthetic recordings");
    add_frequency_options(gen_cmd, gen.freq);
    gen_cmd->add_option("--seed", gen.seed, "Base random seed");
    gen_cmd->add_option("--count", gen.count, "Number of recordings")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--num-channels", gen.num_channels, "Channels per recording")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--duration", gen.duration, "Duration in seconds");
    gen_cmd->add_option("--noise", gen.noise, "Noise RMS relative to the signal RMS")->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory");

    ScalesOptions scales;
    auto* scales_cmd = app.add_subcommand("scales", "Choose decomposition depth from center frequencies");
    add_frequency_options(scales_cmd, scales.freq);
    scales_cmd->add_option("--wavelet", scales.wavelets, "haar, db2, db3, coif1, pollen:<a>,<b> or all");
    scales_cmd->add_option("--sample-period", scales.freq.sample_period, "Seconds per sample")
        ->check(CLI::PositiveNumber);
    scales_cmd->add_option("--max-levels", scales.max_levels, "Largest candidate depth")->check(CLI::PositiveNumber);

    CompressOptions compress;
    auto* compress_cmd = app.add_subcommand("compress", "Top-M coefficient compression and PRD");
    add_input_options(compress_cmd, compress.input, true);
    add_frequency_options(compress_cmd, compress.freq);
    compress_cmd->add_option("--wavelet", compress.wavelet, "Wavelet");
    compress_cmd->add_option("--cr", compress.crs, "Compression ratios")->delimiter(',');
    compress_cmd->add_option("--levels", compress.levels, "Fixed J0 (0 = from center frequency)");
    compress_cmd->add_option("--dump-coeffs", compress.dump_coeffs, "Write level,index,value CSV of the first channel");

    SurfaceMatchOptions surface;
    surface.crs = {3.0};
    auto* surface_cmd = app.add_subcommand("surface", "PRD surface over the parameter plane");
    SurfaceMatchOptions match;
    auto* match_cmd = app.add_subcommand("match", "Surfaces, minima and optimum for each compression ratio");
    for (auto [cmd, o] : {std::pair{surface_cmd, &surface}, std::pair{match_cmd, &match}}) {
        add_input_options(cmd, o->input, false);
        add_frequency_options(cmd, o->freq);
        cmd->add_option("--cr", o->crs, "Compression ratio(s)")->delimiter(',');
        cmd->add_option("--grid", o->grid, "Grid points per axis")->check(CLI::Range(2, 4097));
        cmd->add_flag("--refine,!--no-refine", o->refine, "Nested-grid refinement of the minimum");
        cmd->add_option("--fixed-levels", o->fixed_levels, "Use one J0 for every wavelet (0 = per point)");
        cmd->add_option("--out-dir", o->out_dir, "Output directory");
        cmd->add_option("--synthetic", o->synthetic, "Use N seeded synthetic recordings instead of files");
        cmd->add_option("--seed", o->seed, "Base seed for --synthetic");
    }
    match_cmd->add_option("--per", match.per, "One minimum per channel or per subject")
        ->check(CLI::IsMember({"channel", "subject"}));
    match_cmd->add_flag("--all-surfaces", match.all_surfaces, "Write every recording's surface");

    WavefunOptions wavefun;
    auto* wavefun_cmd = app.add_subcommand("wavefun", "Cascade wavelet shape and correlations");
    wavefun_cmd->add_option("--wavelet", wavefun.wavelet, "Wavelet");
    wavefun_cmd->add_option("--depth", wavefun.depth, "Cascade depth")->check(CLI::Range(6, 16));
    wavefun_cmd->add_option("--out", wavefun.out, "Write x,psi CSV");
    wavefun_cmd->add_flag("--filter", wavefun.filter, "Print k,h_k,g_k");

    try {
        // Config values become extra flags for the chosen subcommand unless given explicitly.
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (args[i] == "--config") {
                config_path = args[i + 1];
            } else if (args[i].starts_with("--config=")) {
                config_path = args[i].substr(9);
            }
        }
        if (!config_path.empty()) {
            CLI::App* chosen = nullptr;
            for (const auto& a : args) {
                for (auto* sub : app.get_subcommands({})) {
                    if (sub->get_name() == a) {
                        chosen = sub;
                    }
                }
                if (chosen != nullptr) {
                    break;
                }
            }
            std::map<std::string, std::string> accepted;
            for (const auto& [key, value] : load_config(config_path)) {
                if (chosen != nullptr && chosen->get_option_no_throw("--" + key) != nullptr) {
                    accepted[key] = value;
                } else {
                    err << "warning: config key '" << key << "' ignored\n";
                }
            }
            for (auto& extra : config_arguments(accepted, args)) {
                args.push_back(std::move(extra));
            }
        }

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (gen_cmd->parsed()) {
            return cmd_gen(gen, out, err);
        }
        if (scales_cmd->parsed()) {
            return cmd_scales(scales, out);
        }
        if (compress_cmd->parsed()) {
            return cmd_compress(compress, out, err);
        }
        if (surface_cmd->parsed()) {
            return cmd_surface(surface, out, err);
        }
        if (match_cmd->parsed()) {
            return cmd_match(match, out, err);
        }
        if (wavefun_cmd->parsed()) {
            return cmd_wavefun(wavefun, out, err);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

} // namespace wavematch::cli
