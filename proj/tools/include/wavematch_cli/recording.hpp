#pragma once

#include "wavematch/errors.hpp"
#include "wavematch/scales.hpp"
#include "wavematch/transform.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wavematch::cli {

/// Malformed recording or config text; the message carries source:line[:column].
class ParseError : public Error {
public:
    ParseError(const std::string& source, std::size_t line, std::size_t column,
               const std::string& message);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct Channel {
    std::string name;
    Signal signal;
};

/// Channel-synchronized recording. All channels share length and sample period.
///
/// On disk: optional leading "# key=value" metadata lines (subject, species,
/// sample_period, segment), one header row of channel names, then one
/// comma-separated row of samples per sampling period.
struct RecordingFile {
    std::string subject_id;
    std::optional<Species> species;
    double sample_period = kDefaultSamplePeriod;
    std::size_t segment_begin = 0;
    std::size_t segment_end = 0;  // exclusive, in samples of the original file
    std::vector<Channel> channels;

    std::size_t length() const { return channels.empty() ? 0 : channels.front().signal.size(); }
};

RecordingFile parse_recording_csv(std::istream& in, const std::string& source = "<stream>");

/// Only "csv" is supported.
RecordingFile load_recording(const std::filesystem::path& path, std::string_view format = "csv");

void write_recording_csv(std::ostream& out, const RecordingFile& rec);

/// Samples [begin, end) of every channel. Throws ShapeError when out of range.
RecordingFile cut_segment(const RecordingFile& rec, std::size_t begin, std::size_t end);

/// Keeps channels by name or zero-based index, in the order given.
RecordingFile select_channels(const RecordingFile& rec, std::span<const std::string> selectors);

/// Largest power-of-two window centred in a signal of `length` samples.
struct TrimWindow {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
};

TrimWindow center_trim_window(std::size_t length);

Signal center_trim(const Signal& x, TrimWindow* window = nullptr);

/// Periodogram peak in cycles per minute between 0.5 and max_cpm, evaluated on
/// a 0.01 cpm grid. Diagnostic only; scale selection uses the species rate.
double dominant_cpm_estimate(const Signal& x, double max_cpm = 15.0);

} // namespace wavematch::cli
