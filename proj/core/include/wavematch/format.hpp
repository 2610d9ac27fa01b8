#pragma once

#include <string>

namespace wavematch {

/// Shortest decimal text that round-trips to the same double. Used for every
/// CSV/JSON number so output is byte-stable across runs.
std::string format_double(double value);

} // namespace wavematch
