#include "wavematch/filterbank.hpp"

#include "wavematch/errors.hpp"
#include "wavematch/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace wavematch {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;

double wrap_angle(double x) {
    if (x >= -kPi && x <= kPi) {
        return x;
    }
    // remainder() maps into [-pi, pi] with ties at the edges resolved to +-pi
    return std::remainder(x, 2.0 * kPi);
}

double parse_angle(std::string_view text) {
    bool times_pi = false;
    if (text.size() >= 2 && text.substr(text.size() - 2) == "pi") {
        times_pi = true;
        text.remove_suffix(2);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw InvalidParameter("malformed angle '" + std::string(text) + "'");
    }
    return times_pi ? value * kPi : value;
}

} // namespace

PollenPoint make_pollen_point(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidParameter("plane point must be finite");
    }
    return {wrap_angle(a), wrap_angle(b)};
}

PollenPoint canonical_orientation(PollenPoint p) {
    if (p.a < 0.0 || (p.a == 0.0 && p.b < 0.0)) {
        return make_pollen_point(-p.a, -p.b);
    }
    return p;
}

std::string_view short_name(NamedWavelet w) {
    switch (w) {
    case NamedWavelet::Haar: return "haar";
    case NamedWavelet::Daubechies2: return "db2";
    case NamedWavelet::Daubechies3: return "db3";
    case NamedWavelet::Coiflet1: return "coif1";
    }
    return "?";
}

std::string WaveletSpec::to_string() const {
    if (is_named()) {
        return std::string(short_name(named()));
    }
    return "pollen:" + format_double(point().a) + "," + format_double(point().b);
}

WaveletSpec WaveletSpec::parse(std::string_view text) {
    for (NamedWavelet w : kNamedWavelets) {
        if (text == short_name(w)) {
            return w;
        }
    }
    constexpr std::string_view prefix = "pollen:";
    if (text.starts_with(prefix)) {
        text.remove_prefix(prefix.size());
        auto comma = text.find(',');
        if (comma == std::string_view::npos) {
            throw InvalidParameter("expected pollen:<a>,<b>");
        }
        return make_pollen_point(parse_angle(text.substr(0, comma)),
                                 parse_angle(text.substr(comma + 1)));
    }
    throw InvalidParameter("unknown wavelet '" + std::string(text) + "'");
}

std::vector<double> qmf(std::span<const double> h) {
    if (h.empty() || h.size() % 2 != 0) {
        throw InvalidParameter("quadrature mirror needs a nonempty even-length filter");
    }
    const std::size_t len = h.size();
    std::vector<double> g(len);
    for (std::size_t k = 0; k < len; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        g[k] = sign * h[len - 1 - k];
    }
    return g;
}

FilterPair standard_filter(NamedWavelet w) {
    std::vector<double> h;
    switch (w) {
    case NamedWavelet::Haar:
        h = {1.0 / kSqrt2, 1.0 / kSqrt2};
        break;
    case NamedWavelet::Daubechies2: {
        const double s3 = std::sqrt(3.0);
        const double c = 1.0 / (4.0 * kSqrt2);
        h = {(1 + s3) * c, (3 + s3) * c, (3 - s3) * c, (1 - s3) * c};
        break;
    }
    case NamedWavelet::Daubechies3: {
        const double s10 = std::sqrt(10.0);
        const double r = std::sqrt(5.0 + 2.0 * s10);
        const double c = kSqrt2 / 32.0;
        h = {(1 + s10 + r) * c,
             (5 + s10 + 3 * r) * c,
             (10 - 2 * s10 + 2 * r) * c,
             (10 - 2 * s10 - 2 * r) * c,
             (5 + s10 - 3 * r) * c,
             (1 + s10 - r) * c};
        break;
    }
    case NamedWavelet::Coiflet1: {
        const double s7 = std::sqrt(7.0);
        const double c = 1.0 / (16.0 * kSqrt2);
        h = {(s7 - 3) * c, (1 - s7) * c, (14 - 2 * s7) * c,
             (14 + 2 * s7) * c, (5 + s7) * c, (1 - s7) * c};
        break;
    }
    }
    auto g = qmf(h);
    return {std::move(h), std::move(g)};
}

FilterPair pollen_filter(PollenPoint p) {
    if (!std::isfinite(p.a) || !std::isfinite(p.b)) {
        throw InvalidParameter("plane point must be finite");
    }
    const double ca = std::cos(p.a);
    const double sa = std::sin(p.a);
    const double cb = std::cos(p.b);
    const double sb = std::sin(p.b);
    const double cd = std::cos(p.a - p.b);
    const double sd = std::sin(p.a - p.b);

    // Coefficients normalized to sum 2; each parity class sums to 1.
    const double h0 = ((1 + ca + sa) * (1 - cb - sb) + 2 * sb * ca) / 4;
    const double h1 = ((1 - ca + sa) * (1 + cb - sb) - 2 * sb * ca) / 4;
    const double h2 = (1 + cd + sd) / 2;
    const double h3 = (1 + cd - sd) / 2;
    const double h4 = 1 - h0 - h2;
    const double h5 = 1 - h1 - h3;

    std::vector<double> h = {h0, h1, h2, h3, h4, h5};
    for (double& v : h) {
        v /= kSqrt2;
    }
    auto g = qmf(h);
    return {std::move(h), std::move(g)};
}

FilterPair make_filter(const WaveletSpec& spec) {
    return spec.is_named() ? standard_filter(spec.named()) : pollen_filter(spec.point());
}

double OrthonormalityReport::worst() const {
    return std::max({dc_gain, unit_energy, double_shift, highpass_dc, mirror});
}

OrthonormalityReport check_orthonormality(const FilterPair& f) {
    OrthonormalityReport r;
    const auto& h = f.h;
    double sum = 0.0;
    double energy = 0.0;
    for (double v : h) {
        sum += v;
        energy += v * v;
    }
    r.dc_gain = std::abs(sum - kSqrt2);
    r.unit_energy = std::abs(energy - 1.0);
    for (std::size_t shift = 2; shift < h.size(); shift += 2) {
        double acc = 0.0;
        for (std::size_t k = 0; k + shift < h.size(); ++k) {
            acc += h[k] * h[k + shift];
        }
        r.double_shift = std::max(r.double_shift, std::abs(acc));
    }
    double gsum = 0.0;
    for (double v : f.g) {
        gsum += v;
    }
    r.highpass_dc = std::abs(gsum);
    if (f.g.size() != h.size()) {
        r.mirror = 1.0;
    } else {
        const auto expected = qmf(h);
        for (std::size_t k = 0; k < h.size(); ++k) {
            r.mirror = std::max(r.mirror, std::abs(expected[k] - f.g[k]));
        }
    }
    return r;
}

std::string filter_csv(const FilterPair& f) {
    std::ostringstream out;
    out << "k,h_k,g_k\n";
    for (std::size_t k = 0; k < f.h.size(); ++k) {
        out << k << ',' << format_double(f.h[k]) << ',' << format_double(f.g[k]) << '\n';
    }
    return out.str();
}

} // namespace wavematch

namespace wavematch {

std::vector<double> six_tap_embedding(NamedWavelet w) {
    const auto native = standard_filter(w).h;
    std::vector<double> out(6, 0.0);
    const std::size_t pad = (6 - native.size()) / 2;
    std::copy(native.begin(), native.end(), out.begin() + static_cast<std::ptrdiff_t>(pad));
    return out;
}

PlaneFit fit_plane_point(std::span<const double> target) {
    if (target.size() != 6) {
        throw InvalidParameter("plane fit needs a six-tap target");
    }
    const auto distance = [&](double a, double b) {
        const auto f = pollen_filter({a, b});
        double worst = 0.0;
        for (std::size_t k = 0; k < 6; ++k) {
            worst = std::max(worst, std::abs(f.h[k] - target[k]));
        }
        return worst;
    };

    PlaneFit best{{0.0, 0.0}, distance(0.0, 0.0)};
    constexpr int kCoarse = 257;
    const double coarse_step = 2.0 * kPi / (kCoarse - 1);
    for (int i = 0; i < kCoarse; ++i) {
        for (int j = 0; j < kCoarse; ++j) {
            const double a = -kPi + i * coarse_step;
            const double b = -kPi + j * coarse_step;
            const double d = distance(a, b);
            if (d < best.max_abs_error) {
                best = {{a, b}, d};
            }
        }
    }

    double step = coarse_step;
    for (int round = 0; round < 16; ++round) {
        step /= 4.0;
        const PollenPoint center = best.point;
        for (int u = -8; u <= 8; ++u) {
            for (int v = -8; v <= 8; ++v) {
                const double a = center.a + u * step;
                const double b = center.b + v * step;
                const double d = distance(a, b);
                if (d < best.max_abs_error) {
                    best = {{a, b}, d};
                }
            }
        }
    }
    best.point = make_pollen_point(best.point.a, best.point.b);
    return best;
}

} // namespace wavematch
