#include "wavematch/compress.hpp"
#include "wavematch/errors.hpp"
#include "wavematch/matcher.hpp"
#include "wavematch/scales.hpp"
#include "wavematch_cli/recording.hpp"
#include "wavematch_cli/synth.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>

using namespace wavematch;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Signal test_signal(std::uint64_t seed = 1) {
    cli::SyntheticSpec spec;
    spec.seed = seed;
    spec.duration_s = 102.4;
    spec.required_levels = 7;
    return cli::center_trim(cli::synthesize(spec));
}

PrdSurface synthetic_surface(int resolution, const std::function<double(double, double)>& f) {
    PrdSurface s;
    s.grid.resolution = resolution;
    s.values.resize(static_cast<std::size_t>(resolution * resolution));
    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
            s.values[static_cast<std::size_t>(i * resolution + j)] = f(s.grid.a_at(i), s.grid.b_at(j));
        }
    }
    return s;
}

} // namespace

TEST_CASE("grid spec") {
    GridSpec g;
    g.resolution = 5;
    g.validate();
    CHECK(g.a_at(0) == -kPi);
    CHECK(g.a_at(4) == kPi);
    CHECK(g.b_at(2) == Approx(0.0).margin(1e-15));
    g.resolution = 1;
    CHECK_THROWS_AS(g.validate(), InvalidParameter);
    g.resolution = 9;
    g.a = {1.0, 1.0};
    CHECK_THROWS_AS(g.validate(), InvalidParameter);
    g.a = {-4.0, 0.0};
    CHECK_THROWS_AS(g.validate(), InvalidParameter);
}

TEST_CASE("surface cells equal direct evaluation") {
    const auto x = test_signal();
    SurfaceOptions opts;
    opts.grid.resolution = 3;
    opts.cr = 5.0;
    const auto s = prd_surface(x, opts);
    REQUIRE(s.values.size() == 9);
    CHECK(s.missing() == 0);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const auto f = pollen_filter(make_pollen_point(s.grid.a_at(i), s.grid.b_at(j)));
            const int levels = select_levels(center_frequency(f), x.sample_period, 5.0 / 60.0,
                                             exact_log2(x.size()));
            CHECK(s.at(i, j) == compress_and_measure(x.samples, f, {levels}, {5.0}).prd_percent);
            CHECK(s.at(i, j) >= s.minimum.prd);
        }
    }
}

TEST_CASE("coarse grid minimum matches a brute-force loop") {
    const auto x = test_signal(2);
    SurfaceOptions opts;
    opts.grid.resolution = 9;
    const auto s = prd_surface(x, opts);
    double best = std::numeric_limits<double>::infinity();
    double best_a = 0.0;
    double best_b = 0.0;
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) {
            const double a = -kPi + i * (2.0 * kPi / 8.0);
            const double b = -kPi + j * (2.0 * kPi / 8.0);
            const auto f = pollen_filter(make_pollen_point(a, b));
            const int levels = select_levels(center_frequency(f), 0.1, 5.0 / 60.0, exact_log2(x.size()));
            const double v = compress_and_measure(x.samples, f, {levels}, {3.0}).prd_percent;
            if (v < best) {
                best = v;
                best_a = a;
                best_b = b;
            }
        }
    }
    CHECK(s.minimum.prd == Approx(best).margin(1e-12));
    CHECK(s.minimum.a == Approx(best_a).margin(1e-12));
    CHECK(s.minimum.b == Approx(best_b).margin(1e-12));
}

TEST_CASE("surface is independent of worker count") {
    const auto x = test_signal(3);
    SurfaceOptions opts;
    opts.grid.resolution = 9;
    const auto serial = prd_surface(x, opts);
    opts.workers = 4;
    const auto parallel = prd_surface(x, opts);
    CHECK(serial.values == parallel.values);
}

TEST_CASE("fixed levels policy") {
    const auto x = test_signal(4);
    SurfaceOptions opts;
    opts.grid.resolution = 2;
    opts.levels.policy = LevelsPolicy::Fixed;
    opts.levels.fixed_levels = 5;
    const auto s = prd_surface(x, opts);
    CHECK(s.levels_policy == LevelsPolicy::Fixed);
    const auto f = pollen_filter(make_pollen_point(s.grid.a_at(1), s.grid.b_at(0)));
    CHECK(s.at(1, 0) == compress_and_measure(x.samples, f, {5}, {3.0}).prd_percent);
}

TEST_CASE("surface errors") {
    SurfaceOptions opts;
    opts.grid.resolution = 2;
    CHECK_THROWS_AS(prd_surface(Signal{std::vector<double>(100, 1.0)}, opts), ShapeError);
    opts.cr = 0.5;
    CHECK_THROWS_AS(prd_surface(test_signal(), opts), InvalidParameter);
}

TEST_CASE("minimum over missing cells") {
    auto s = synthetic_surface(3, [](double, double) { return kNaN; });
    s.values[5] = 42.0;
    s.minimum = locate_minimum(s);
    CHECK(s.minimum.prd == 42.0);
    CHECK(s.minimum.a == s.grid.a_at(1));
    CHECK(s.minimum.b == s.grid.b_at(2));
    CHECK(s.missing() == 8);
    const auto empty = synthetic_surface(3, [](double, double) { return kNaN; });
    CHECK_THROWS_AS(locate_minimum(empty), NoMinimumError);
}

TEST_CASE("refinement finds a planted bowl") {
    const double a0 = 0.4137;
    const double b0 = -1.2071;
    const auto bowl = [&](double a, double b) { return 3.0 + (a - a0) * (a - a0) + 2.0 * (b - b0) * (b - b0); };
    const auto s = synthetic_surface(33, bowl);
    const PlaneObjective objective = [&](PollenPoint p) { return bowl(p.a, p.b); };
    const auto coarse = locate_minimum(s);
    const auto fine = locate_minimum(s, true, objective);
    CHECK(fine.prd <= coarse.prd);
    const double fine_step = s.grid.a_step() / std::pow(4.0, 3);
    CHECK(std::abs(fine.a - a0) <= fine_step);
    CHECK(std::abs(fine.b - b0) <= fine_step);
    const auto unrefined = locate_minimum(s, false, objective);
    CHECK(unrefined.prd == coarse.prd);
}

TEST_CASE("refined minimum never worse than the grid on real surfaces") {
    const auto x = test_signal(5);
    SurfaceOptions opts;
    opts.grid.resolution = 9;
    const auto s = prd_surface(x, opts);
    const PlaneObjective objective = [&](PollenPoint p) {
        return evaluate_wavelet(x, pollen_filter(p), 3.0, opts.levels);
    };
    CHECK(locate_minimum(s, true, objective).prd <= s.minimum.prd);
}

TEST_CASE("aggregate") {
    const std::vector<PollenPoint> two{{0.4, -0.2}, {0.5, -0.3}};
    const auto r = aggregate(two);
    CHECK(r.optimum.a == Approx(0.45));
    CHECK(r.optimum.b == Approx(-0.25));
    CHECK_FALSE(r.spread_warning);

    const std::vector<PollenPoint> one{{1.0, 2.0}};
    CHECK(aggregate(one).optimum == PollenPoint{1.0, 2.0});

    const std::vector<PollenPoint> three{{0.1, 0.2}, {-0.7, 1.1}, {0.3, -0.9}};
    const std::vector<PollenPoint> permuted{three[2], three[0], three[1]};
    CHECK(aggregate(three).optimum.a == Approx(aggregate(permuted).optimum.a));
    CHECK(aggregate(three).optimum.b == Approx(aggregate(permuted).optimum.b));
    std::vector<PollenPoint> shifted;
    for (auto p : three) {
        shifted.push_back({p.a + 0.25, p.b - 0.5});
    }
    CHECK(aggregate(shifted).optimum.a == Approx(aggregate(three).optimum.a + 0.25));
    CHECK(aggregate(shifted).optimum.b == Approx(aggregate(three).optimum.b - 0.5));

    const std::vector<PollenPoint> far{{-2.0, 0.0}, {2.0, 0.0}};
    CHECK(aggregate(far).spread_warning);
    CHECK_THROWS_AS(aggregate(std::vector<PollenPoint>{}), InvalidParameter);
}

TEST_CASE("published optima units") {
    const auto res = resolve_published_units();
    CHECK(res.units == AngleUnits::PiNormalized);
    CHECK(res.canine_correlation >= 0.99);
    CHECK(res.human_correlation >= 0.96);
    CHECK(res.canine_correlation_alt < res.canine_correlation);
    CHECK(published_optima().size() == 8);
    const auto p = to_plane_point(0.5, -0.25, AngleUnits::PiNormalized);
    CHECK(p.a == Approx(kPi / 2.0));
}

TEST_CASE("surface csv") {
    auto s = synthetic_surface(2, [](double a, double) { return a > 0 ? 1.5 : kNaN; });
    const auto text = surface_csv(s);
    CHECK(text.rfind("a,b,prd_percent\n", 0) == 0);
    CHECK(text.find(",nan\n") != std::string::npos);
    CHECK(text.find(",1.5\n") != std::string::npos);
}
