#include "wavematch/transform.hpp"

#include "wavematch/errors.hpp"
#include "wavematch/format.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace wavematch {

namespace {

std::size_t filter_offset(const FilterPair& f) {
    return f.size() / 2 - 1;
}

void check_filter(const FilterPair& f) {
    if (f.h.empty() || f.h.size() % 2 != 0 || f.g.size() != f.h.size()) {
        throw InvalidParameter("filter pair must have equal, even, nonzero lengths");
    }
}

} // namespace

int exact_log2(std::size_t n) {
    if (n < 2 || !std::has_single_bit(n)) {
        throw ShapeError("signal length " + std::to_string(n) + " is not a power of two >= 2");
    }
    return std::countr_zero(n);
}

std::size_t DwtCoeffs::size() const {
    std::size_t total = approx.size();
    for (const auto& d : details) {
        total += d.size();
    }
    return total;
}

std::vector<double> DwtCoeffs::flatten() const {
    std::vector<double> flat;
    flat.reserve(size());
    flat.insert(flat.end(), approx.begin(), approx.end());
    for (auto it = details.rbegin(); it != details.rend(); ++it) {
        flat.insert(flat.end(), it->begin(), it->end());
    }
    return flat;
}

DwtCoeffs DwtCoeffs::unflatten(std::span<const double> flat, DecompositionPlan plan) {
    const int depth = exact_log2(flat.size());
    if (plan.levels < 1 || plan.levels > depth) {
        throw PlanError("levels out of range for coefficient vector");
    }
    DwtCoeffs c;
    c.plan = plan;
    c.details.resize(static_cast<std::size_t>(plan.levels));
    std::size_t pos = flat.size() >> plan.levels;
    c.approx.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(pos));
    for (int j = plan.levels; j >= 1; --j) {
        const std::size_t len = flat.size() >> j;
        auto first = flat.begin() + static_cast<std::ptrdiff_t>(pos);
        c.details[static_cast<std::size_t>(j - 1)].assign(first, first + static_cast<std::ptrdiff_t>(len));
        pos += len;
    }
    return c;
}

void analysis_step(std::span<const double> x, const FilterPair& f,
                   std::span<double> approx, std::span<double> detail) {
    const std::size_t n = x.size();
    const std::size_t half = n / 2;
    const std::size_t taps = f.size();
    const std::size_t offset = filter_offset(f);
    const double* h = f.h.data();
    const double* g = f.g.data();
    for (std::size_t i = 0; i < half; ++i) {
        // (2i + k - offset) mod n, kept nonnegative by adding a multiple of n
        std::size_t idx = (2 * i + n * taps - offset) % n;
        double lo = 0.0;
        double hi = 0.0;
        for (std::size_t k = 0; k < taps; ++k) {
            const double v = x[idx];
            lo += h[k] * v;
            hi += g[k] * v;
            if (++idx == n) {
                idx = 0;
            }
        }
        approx[i] = lo;
        detail[i] = hi;
    }
}

void synthesis_step(std::span<const double> approx, std::span<const double> detail,
                    const FilterPair& f, std::span<double> out) {
    const std::size_t n = out.size();
    const std::size_t half = n / 2;
    const std::size_t taps = f.size();
    const std::size_t offset = filter_offset(f);
    const double* h = f.h.data();
    const double* g = f.g.data();
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < half; ++i) {
        std::size_t idx = (2 * i + n * taps - offset) % n;
        const double a = approx[i];
        const double d = detail[i];
        for (std::size_t k = 0; k < taps; ++k) {
            out[idx] += h[k] * a + g[k] * d;
            if (++idx == n) {
                idx = 0;
            }
        }
    }
}

DwtCoeffs dwt(std::span<const double> x, const FilterPair& f, DecompositionPlan plan) {
    check_filter(f);
    const int depth = exact_log2(x.size());
    if (plan.levels < 1 || plan.levels > depth) {
        throw PlanError("decomposition levels " + std::to_string(plan.levels) +
                        " outside [1, " + std::to_string(depth) + "]");
    }
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw ShapeError("signal contains non-finite samples");
        }
    }

    DwtCoeffs c;
    c.plan = plan;
    c.details.reserve(static_cast<std::size_t>(plan.levels));
    std::vector<double> current(x.begin(), x.end());
    std::vector<double> next;
    for (int j = 0; j < plan.levels; ++j) {
        const std::size_t half = current.size() / 2;
        next.assign(half, 0.0);
        std::vector<double> detail(half);
        analysis_step(current, f, next, detail);
        c.details.push_back(std::move(detail));
        current.swap(next);
    }
    c.approx = std::move(current);
    return c;
}

std::vector<double> idwt(const DwtCoeffs& c, const FilterPair& f) {
    check_filter(f);
    const auto levels = static_cast<std::size_t>(c.plan.levels);
    if (levels < 1 || c.details.size() != levels) {
        throw ShapeError("coefficient set does not match its plan");
    }
    std::vector<double> current = c.approx;
    for (std::size_t j = levels; j-- > 0;) {
        const auto& detail = c.details[j];
        if (detail.size() != current.size() || current.empty()) {
            throw ShapeError("level " + std::to_string(j + 1) + " length mismatch");
        }
        std::vector<double> out(2 * current.size());
        synthesis_step(current, detail, f, out);
        current.swap(out);
    }
    return current;
}

std::string coeffs_csv(const DwtCoeffs& c) {
    std::ostringstream out;
    out << "level,index,value\n";
    for (std::size_t i = 0; i < c.approx.size(); ++i) {
        out << "0," << i << ',' << format_double(c.approx[i]) << '\n';
    }
    for (std::size_t j = 0; j < c.details.size(); ++j) {
        for (std::size_t i = 0; i < c.details[j].size(); ++i) {
            out << j + 1 << ',' << i << ',' << format_double(c.details[j][i]) << '\n';
        }
    }
    return out.str();
}

} // namespace wavematch
