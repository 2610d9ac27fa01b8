#include "wavematch/compress.hpp"
#include "wavematch/errors.hpp"
#include "wavematch/filterbank.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace wavematch;
using Catch::Approx;

TEST_CASE("retained count") {
    CHECK(retained_count(4096, 3.0) == 1365);
    CHECK(retained_count(4096, 1.0) == 4096);
    CHECK(retained_count(4, 100.0) == 1);
    CHECK_THROWS_AS(retained_count(8, 0.5), InvalidParameter);
}

TEST_CASE("top-m keeps largest magnitudes, earlier index on ties") {
    auto flat_after = [](std::vector<double> flat, double cr) {
        const auto c = DwtCoeffs::unflatten(flat, {1});
        return threshold_top_m(c, {cr}).coeffs.flatten();
    };
    CHECK(flat_after({4, -3, 2, 1}, 2.0) == std::vector<double>{4, -3, 0, 0});
    CHECK(flat_after({2, -2, 2, -2}, 2.0) == std::vector<double>{2, -2, 0, 0});
    CHECK(flat_after({1, 2, 3, 4}, 1.0) == std::vector<double>{1, 2, 3, 4});
    const auto r = threshold_top_m(DwtCoeffs::unflatten(std::vector<double>{1, 5, 3, 4}, {1}), {2.0});
    CHECK(r.kept == 2);
    CHECK(r.cr_actual == 2.0);
    CHECK(r.kept_mask == std::vector<bool>{false, true, false, true});
}

TEST_CASE("prd") {
    const std::vector<double> x{3, 4};
    CHECK(prd(x, x) == 0.0);
    CHECK(prd(x, std::vector<double>{0, 0}) == Approx(100.0));
    CHECK(prd(x, std::vector<double>{3, 0}) == Approx(80.0));
    CHECK_THROWS_AS(prd(x, std::vector<double>{3}), ShapeError);
    CHECK_THROWS_AS(prd(std::vector<double>{0, 0}, x), NumericalError);
}

TEST_CASE("compress and measure") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> d;
    std::vector<double> x(1024);
    for (auto& v : x) {
        v = d(rng);
    }
    const auto db3 = standard_filter(NamedWavelet::Daubechies3);
    CHECK(compress_and_measure(x, db3, {6}, {1.0}).prd_percent < 1e-8);
    double previous = 0.0;
    for (double cr : {3.0, 5.0, 7.0, 10.0}) {
        const auto r = compress_and_measure(x, db3, {6}, {cr});
        CHECK(r.kept == retained_count(1024, cr));
        CHECK(r.cr_actual >= cr);
        CHECK(r.prd_percent >= previous);
        CHECK(r.prd_percent <= 100.0);
        previous = r.prd_percent;
    }
    const auto viaspec = compress_and_measure(x, WaveletSpec(NamedWavelet::Daubechies3), {6}, {3.0});
    CHECK(viaspec.prd_percent == compress_and_measure(x, db3, {6}, {3.0}).prd_percent);
}

TEST_CASE("csv row") {
    CompressionResult r{3.0, 3.0029325513196481, 1364, 12.5};
    CHECK(compression_csv_header() == "cr_requested,cr_actual,M,prd_percent");
    CHECK(to_csv_row(r) == "3,3.002932551319648,1364,12.5");
}
