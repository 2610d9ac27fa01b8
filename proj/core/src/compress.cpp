#include "wavematch/compress.hpp"

#include "wavematch/errors.hpp"
#include "wavematch/format.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wavematch {

std::size_t retained_count(std::size_t n, double cr) {
    if (!std::isfinite(cr) || cr < 1.0) {
        throw InvalidParameter("compression ratio must be finite and >= 1");
    }
    const auto m = static_cast<std::size_t>(std::floor(static_cast<double>(n) / cr));
    return std::clamp<std::size_t>(m, 1, std::max<std::size_t>(n, 1));
}

std::vector<std::size_t> top_m_indices(std::span<const double> values, std::size_t m) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    m = std::min(m, values.size());
    const auto before = [&](std::size_t lhs, std::size_t rhs) {
        const double a = std::abs(values[lhs]);
        const double b = std::abs(values[rhs]);
        return a > b || (a == b && lhs < rhs);
    };
    std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m), idx.end(), before);
    idx.resize(m);
    std::sort(idx.begin(), idx.end(), before);
    return idx;
}

ThresholdResult threshold_top_m(const DwtCoeffs& c, CompressionConfig cfg) {
    const auto flat = c.flatten();
    const std::size_t m = retained_count(flat.size(), cfg.cr);

    ThresholdResult r;
    r.kept = m;
    r.cr_actual = static_cast<double>(flat.size()) / static_cast<double>(m);
    r.kept_mask.assign(flat.size(), false);
    std::vector<double> kept(flat.size(), 0.0);
    for (std::size_t i : top_m_indices(flat, m)) {
        kept[i] = flat[i];
        r.kept_mask[i] = true;
    }
    r.coeffs = DwtCoeffs::unflatten(kept, c.plan);
    return r;
}

double prd(std::span<const double> original, std::span<const double> reconstructed) {
    if (original.size() != reconstructed.size()) {
        throw ShapeError("prd: length mismatch");
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < original.size(); ++i) {
        const double diff = original[i] - reconstructed[i];
        num += diff * diff;
        den += original[i] * original[i];
    }
    if (!(den > 0.0)) {
        throw NumericalError("prd undefined for a zero-energy signal");
    }
    return std::sqrt(num / den) * 100.0;
}

CompressionResult compress_and_measure(std::span<const double> x, const FilterPair& f,
                                       DecompositionPlan plan, CompressionConfig cfg) {
    const auto coeffs = dwt(x, f, plan);
    const auto thresholded = threshold_top_m(coeffs, cfg);
    const auto rebuilt = idwt(thresholded.coeffs, f);

    CompressionResult r;
    r.cr_requested = cfg.cr;
    r.cr_actual = thresholded.cr_actual;
    r.kept = thresholded.kept;
    r.prd_percent = prd(x, rebuilt);
    return r;
}

CompressionResult compress_and_measure(std::span<const double> x, const WaveletSpec& w,
                                       DecompositionPlan plan, CompressionConfig cfg) {
    return compress_and_measure(x, make_filter(w), plan, cfg);
}

std::string compression_csv_header() {
    return "cr_requested,cr_actual,M,prd_percent";
}

std::string to_csv_row(const CompressionResult& r) {
    return format_double(r.cr_requested) + "," + format_double(r.cr_actual) + "," +
           std::to_string(r.kept) + "," + format_double(r.prd_percent);
}

} // namespace wavematch
