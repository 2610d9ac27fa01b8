#include "fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace wavematch::detail {

namespace {

// The FFTW planner is not reentrant; execution with the new-array interface is.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [n, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    fftw_plan get(int n) {
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(n); it != plans_.end()) {
            return it->second;
        }
        std::vector<double> in(static_cast<std::size_t>(n));
        std::vector<fftw_complex> out(static_cast<std::size_t>(n / 2 + 1));
        fftw_plan plan = fftw_plan_dft_r2c_1d(n, in.data(), out.data(),
                                              FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(n, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<int, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

} // namespace

std::vector<double> dft_magnitude(std::span<const double> x) {
    const int n = static_cast<int>(x.size());
    if (n == 0) {
        return {};
    }
    fftw_plan plan = plan_cache().get(n);
    std::vector<double> in(x.begin(), x.end());
    std::vector<fftw_complex> out(static_cast<std::size_t>(n / 2 + 1));
    fftw_execute_dft_r2c(plan, in.data(), out.data());
    std::vector<double> mag(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        mag[k] = std::hypot(out[k][0], out[k][1]);
    }
    return mag;
}

} // namespace wavematch::detail
