#include "wavematch/wavelet_shape.hpp"

#include "wavematch/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace wavematch {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// out = f convolved with c upsampled by `stride`
std::vector<double> convolve_strided(std::span<const double> f, std::span<const double> c,
                                     std::size_t stride) {
    std::vector<double> out(f.size() + (c.size() - 1) * stride, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double ck = c[k];
        if (ck == 0.0) {
            continue;
        }
        double* dst = out.data() + k * stride;
        for (std::size_t m = 0; m < f.size(); ++m) {
            dst[m] += f[m] * ck;
        }
    }
    return out;
}

} // namespace

double WaveletShape::energy() const {
    double acc = 0.0;
    for (double v : samples) {
        acc += v * v;
    }
    return acc * grid_step;
}

std::vector<double> scaling_function_integer_samples(std::span<const double> h) {
    const auto len = static_cast<Eigen::Index>(h.size());
    std::vector<double> impulse(h.size(), 0.0);
    impulse.at(0) = 1.0;

    // phi(i) = sum_j sqrt2 h_{2i-j} phi(j)
    Eigen::MatrixXd refine = Eigen::MatrixXd::Zero(len, len);
    for (Eigen::Index i = 0; i < len; ++i) {
        for (Eigen::Index j = 0; j < len; ++j) {
            const Eigen::Index k = 2 * i - j;
            if (k >= 0 && k < len) {
                refine(i, j) = kSqrt2 * h[static_cast<std::size_t>(k)];
            }
        }
    }
    refine -= Eigen::MatrixXd::Identity(len, len);

    Eigen::FullPivLU<Eigen::MatrixXd> lu(refine);
    lu.setThreshold(1e-10);
    if (lu.rank() != len - 1) {
        return impulse;
    }
    const Eigen::VectorXd kernel = lu.kernel().col(0);
    const double total = kernel.sum();
    if (std::abs(total) < 1e-8) {
        return impulse;
    }
    std::vector<double> values(h.size());
    for (Eigen::Index i = 0; i < len; ++i) {
        values[static_cast<std::size_t>(i)] = kernel(i) / total;
    }
    return values;
}

std::vector<double> cascade_wavelet(const FilterPair& f, int depth) {
    if (depth < 1 || depth > 20) {
        throw InvalidParameter("cascade depth must lie in [1, 20]");
    }
    if (f.h.size() < 2 || f.g.size() != f.h.size()) {
        throw InvalidParameter("cascade needs a filter pair of equal lengths >= 2");
    }
    std::vector<double> lo(f.h.size());
    std::vector<double> hi(f.g.size());
    for (std::size_t k = 0; k < f.h.size(); ++k) {
        lo[k] = kSqrt2 * f.h[k];
        hi[k] = kSqrt2 * f.g[k];
    }

    std::vector<double> phi = scaling_function_integer_samples(f.h);
    for (int i = 0; i + 1 < depth; ++i) {
        phi = convolve_strided(phi, lo, std::size_t{1} << i);
    }
    auto psi = convolve_strided(phi, hi, std::size_t{1} << (depth - 1));

    const std::size_t samples = (f.h.size() - 1) * (std::size_t{1} << depth) + 1;
    psi.resize(samples, 0.0);
    return psi;
}

WaveletShape wavelet_shape(const FilterPair& f, int depth) {
    if (depth < 6) {
        throw InvalidParameter("wavelet shape depth must be >= 6");
    }
    WaveletShape shape;
    shape.depth = depth;
    shape.grid_step = std::ldexp(1.0, -depth);
    shape.samples = cascade_wavelet(f, depth);
    const double energy = shape.energy();
    if (!(energy > 0.0) || !std::isfinite(energy)) {
        throw NumericalError("cascade produced a degenerate wavelet");
    }
    const double scale = 1.0 / std::sqrt(energy);
    for (double& v : shape.samples) {
        v *= scale;
    }
    return shape;
}

WaveletShape wavelet_shape(const WaveletSpec& w, int depth) {
    return wavelet_shape(make_filter(w), depth);
}

double correlate_shapes(const WaveletShape& u, const WaveletShape& v) {
    if (u.grid_step != v.grid_step) {
        throw InvalidParameter("shapes must share a grid step");
    }
    const auto& x = u.samples;
    const auto& y = v.samples;
    const auto nonconstant = [](const std::vector<double>& s) {
        return !s.empty() && std::any_of(s.begin(), s.end(), [&](double t) { return t != s.front(); });
    };
    if (!nonconstant(x) || !nonconstant(y)) {
        throw NumericalError("correlation undefined for a zero-variance shape");
    }

    const double sx = std::accumulate(x.begin(), x.end(), 0.0);
    const double sy = std::accumulate(y.begin(), y.end(), 0.0);
    const double sxx = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
    const double syy = std::inner_product(y.begin(), y.end(), y.begin(), 0.0);
    const auto nx = static_cast<std::ptrdiff_t>(x.size());
    const auto ny = static_cast<std::ptrdiff_t>(y.size());

    double best = 0.0;
    // y[i - shift] is aligned with x[i]
    for (std::ptrdiff_t shift = -(ny - 1); shift < nx; ++shift) {
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, shift);
        const std::ptrdiff_t hi = std::min(nx, shift + ny);
        double sxy = 0.0;
        for (std::ptrdiff_t i = lo; i < hi; ++i) {
            sxy += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i - shift)];
        }
        const auto frame = static_cast<double>(std::max(nx, shift + ny) - std::min<std::ptrdiff_t>(0, shift));
        const double cov = sxy - sx * sy / frame;
        const double vx = sxx - sx * sx / frame;
        const double vy = syy - sy * sy / frame;
        const double r = cov / std::sqrt(vx * vy);
        best = std::max(best, std::abs(r));
    }
    return std::min(best, 1.0);
}

} // namespace wavematch
