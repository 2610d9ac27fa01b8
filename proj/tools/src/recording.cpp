#include "wavematch_cli/recording.hpp"

#include "wavematch/format.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

namespace wavematch::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return cells;
}

std::string compose(const std::string& source, std::size_t line, std::size_t column,
                    const std::string& message) {
    std::string where = source + ":" + std::to_string(line);
    if (column > 0) {
        where += ":" + std::to_string(column);
    }
    return where + ": " + message;
}

void apply_metadata(RecordingFile& rec, std::string_view body, const std::string& source,
                    std::size_t line_no) {
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
        return;  // free-form comment
    }
    const auto key = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    try {
        if (key == "subject") {
            rec.subject_id = std::string(value);
        } else if (key == "species") {
            rec.species = parse_species(value);
        } else if (key == "sample_period") {
            double period = 0.0;
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), period);
            if (ec != std::errc() || ptr != value.data() + value.size() || !(period > 0.0) ||
                !std::isfinite(period)) {
                throw ParseError(source, line_no, 0, "sample_period must be a positive number");
            }
            rec.sample_period = period;
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(source, line_no, 0, e.what());
    }
}

} // namespace

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column,
                       const std::string& message)
    : Error(compose(source, line, column, message)), line_(line), column_(column) {}

RecordingFile parse_recording_csv(std::istream& in, const std::string& source) {
    RecordingFile rec;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<std::vector<double>> columns;

    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty()) {
            continue;
        }
        if (text.front() == '#') {
            if (!have_header) {
                apply_metadata(rec, text.substr(1), source, line_no);
            }
            continue;
        }
        const auto cells = split_commas(text);
        if (!have_header) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (cells[c].empty()) {
                    throw ParseError(source, line_no, c + 1, "empty channel name");
                }
                rec.channels.push_back({std::string(cells[c]), Signal{{}, rec.sample_period}});
            }
            columns.resize(cells.size());
            have_header = true;
            continue;
        }
        if (cells.size() != columns.size()) {
            throw ParseError(source, line_no, 0,
                             "expected " + std::to_string(columns.size()) + " cells, found " +
                                 std::to_string(cells.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            auto cell = cells[c];
            if (cell.size() > 1 && cell.front() == '+') {
                cell.remove_prefix(1);
            }
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
                throw ParseError(source, line_no, c + 1, "non-numeric cell '" + std::string(cell) + "'");
            }
            if (!std::isfinite(value)) {
                throw ParseError(source, line_no, c + 1,
                                 "non-finite sample in channel '" + rec.channels[c].name + "'");
            }
            columns[c].push_back(value);
        }
    }

    if (!have_header) {
        throw ParseError(source, line_no, 0, "empty recording");
    }
    if (columns.front().empty()) {
        throw ParseError(source, line_no, 0, "recording has a header but no samples");
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
        rec.channels[c].signal.samples = std::move(columns[c]);
        rec.channels[c].signal.sample_period = rec.sample_period;
    }
    rec.segment_begin = 0;
    rec.segment_end = rec.length();
    return rec;
}

RecordingFile load_recording(const std::filesystem::path& path, std::string_view format) {
    if (format != "csv") {
        throw InvalidParameter("unsupported recording format '" + std::string(format) + "'");
    }
    std::ifstream in(path);
    if (!in) {
        throw InvalidParameter("cannot open recording " + path.string());
    }
    auto rec = parse_recording_csv(in, path.string());
    if (rec.subject_id.empty()) {
        rec.subject_id = path.stem().string();
    }
    return rec;
}

void write_recording_csv(std::ostream& out, const RecordingFile& rec) {
    if (!rec.subject_id.empty()) {
        out << "# subject=" << rec.subject_id << '\n';
    }
    if (rec.species) {
        out << "# species=" << species_name(*rec.species) << '\n';
    }
    out << "# sample_period=" << format_double(rec.sample_period) << '\n';
    for (std::size_t c = 0; c < rec.channels.size(); ++c) {
        out << (c ? "," : "") << rec.channels[c].name;
    }
    out << '\n';
    for (std::size_t i = 0; i < rec.length(); ++i) {
        for (std::size_t c = 0; c < rec.channels.size(); ++c) {
            out << (c ? "," : "") << format_double(rec.channels[c].signal.samples[i]);
        }
        out << '\n';
    }
}

RecordingFile cut_segment(const RecordingFile& rec, std::size_t begin, std::size_t end) {
    if (begin >= end || end > rec.length()) {
        throw ShapeError("segment " + std::to_string(begin) + ":" + std::to_string(end) +
                         " outside recording of " + std::to_string(rec.length()) + " samples");
    }
    RecordingFile out = rec;
    for (std::size_t c = 0; c < rec.channels.size(); ++c) {
        const auto& src = rec.channels[c].signal.samples;
        out.channels[c].signal.samples.assign(src.begin() + static_cast<std::ptrdiff_t>(begin),
                                              src.begin() + static_cast<std::ptrdiff_t>(end));
    }
    out.segment_begin = rec.segment_begin + begin;
    out.segment_end = rec.segment_begin + end;
    return out;
}

RecordingFile select_channels(const RecordingFile& rec, std::span<const std::string> selectors) {
    if (selectors.empty()) {
        return rec;
    }
    RecordingFile out = rec;
    out.channels.clear();
    for (const auto& sel : selectors) {
        const Channel* found = nullptr;
        for (const auto& ch : rec.channels) {
            if (ch.name == sel) {
                found = &ch;
                break;
            }
        }
        if (found == nullptr) {
            std::size_t index = 0;
            auto [ptr, ec] = std::from_chars(sel.data(), sel.data() + sel.size(), index);
            if (ec == std::errc() && ptr == sel.data() + sel.size() && index < rec.channels.size()) {
                found = &rec.channels[index];
            }
        }
        if (found == nullptr) {
            throw InvalidParameter("no channel '" + sel + "'");
        }
        out.channels.push_back(*found);
    }
    return out;
}

TrimWindow center_trim_window(std::size_t length) {
    if (length < 2) {
        throw ShapeError("need at least two samples to form a power-of-two window");
    }
    const std::size_t size = std::bit_floor(length);
    const std::size_t begin = (length - size) / 2;
    return {begin, begin + size};
}

Signal center_trim(const Signal& x, TrimWindow* window) {
    const auto w = center_trim_window(x.size());
    if (window != nullptr) {
        *window = w;
    }
    Signal out;
    out.sample_period = x.sample_period;
    out.samples.assign(x.samples.begin() + static_cast<std::ptrdiff_t>(w.begin),
                       x.samples.begin() + static_cast<std::ptrdiff_t>(w.end));
    return out;
}

double dominant_cpm_estimate(const Signal& x, double max_cpm) {
    if (x.size() < 2 || !(x.sample_period > 0.0)) {
        throw InvalidParameter("periodogram needs at least two samples and a positive sample period");
    }
    const double mean = std::accumulate(x.samples.begin(), x.samples.end(), 0.0) / static_cast<double>(x.size());
    double best_cpm = 0.0;
    double best_power = -1.0;
    for (int step = 50; step <= static_cast<int>(max_cpm * 100.0); ++step) {
        const double cpm = step / 100.0;
        const double w = 2.0 * std::numbers::pi * cpm / 60.0 * x.sample_period;
        double re = 0.0;
        double im = 0.0;
        for (std::size_t t = 0; t < x.size(); ++t) {
            const double phase = w * static_cast<double>(t);
            re += (x.samples[t] - mean) * std::cos(phase);
            im += (x.samples[t] - mean) * std::sin(phase);
        }
        const double power = re * re + im * im;
        if (power > best_power) {
            best_power = power;
            best_cpm = cpm;
        }
    }
    return best_cpm;
}

} // namespace wavematch::cli
