#include "wavematch/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace wavematch {

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (value == 0.0) {
        return "0";  // folds -0
    }
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

} // namespace wavematch
