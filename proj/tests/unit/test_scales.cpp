#include "oracles.hpp"
#include "wavematch/errors.hpp"
#include "wavematch/filterbank.hpp"
#include "wavematch/scales.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

using namespace wavematch;
using Catch::Approx;

TEST_CASE("center frequencies") {
    CHECK(center_frequency(WaveletSpec(NamedWavelet::Haar)) == Approx(256.0 / 257.0).margin(1e-12));
    CHECK(center_frequency(WaveletSpec(NamedWavelet::Daubechies2)) == Approx(0.6658).margin(1e-4));
    CHECK(center_frequency(WaveletSpec(NamedWavelet::Daubechies3)) == Approx(0.7994).margin(1e-4));
    CHECK(center_frequency(WaveletSpec(NamedWavelet::Coiflet1)) == Approx(0.7994).margin(1e-4));
}

TEST_CASE("center frequency matches the naive DFT oracle") {
    std::vector<FilterPair> filters;
    for (NamedWavelet w : kNamedWavelets) {
        filters.push_back(standard_filter(w));
    }
    filters.push_back(pollen_filter({1.36, -0.82}));
    filters.push_back(pollen_filter({1.25, -0.73}));
    for (const auto& f : filters) {
        const double main = center_frequency(f, 6);
        const double oracle = oracles::naive_center_frequency(f, 6, nullptr, 6);
        CHECK(main == Approx(oracle).margin(1e-12));
        CHECK(main > 0.0);
        CHECK(main < static_cast<double>(f.h.size()));
    }
}

TEST_CASE("center frequency stays inside the support bound") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    for (int i = 0; i < 20; ++i) {
        const double f = center_frequency(pollen_filter({angle(rng), angle(rng)}));
        CHECK(f > 0.0);
        CHECK(f < 6.0);
    }
}

TEST_CASE("table of decomposition depths") {
    struct Row {
        NamedWavelet w;
        int canine;
        int human;
    };
    for (const Row& r : {Row{NamedWavelet::Haar, 7, 8}, Row{NamedWavelet::Daubechies2, 6, 7},
                         Row{NamedWavelet::Daubechies3, 7, 7}, Row{NamedWavelet::Coiflet1, 7, 7}}) {
        const double f = center_frequency(WaveletSpec(r.w));
        INFO(short_name(r.w));
        CHECK(select_levels(f, 0.1, 5.0 / 60.0, 12) == r.canine);
        CHECK(select_levels(f, 0.1, 3.0 / 60.0, 12) == r.human);
    }
}

TEST_CASE("pseudo frequencies") {
    CHECK(pseudo_frequency(0.996, 0.1, 7) == Approx(0.996 / 12.8));
    const auto sel = select_scales(0.8, 0.1, 5.0 / 60.0, 10);
    REQUIRE(sel.pseudo_frequencies.size() == 10);
    for (std::size_t j = 1; j < sel.pseudo_frequencies.size(); ++j) {
        CHECK(sel.pseudo_frequencies[j] < sel.pseudo_frequencies[j - 1]);
    }
    CHECK(sel.chosen_levels == select_levels(0.8, 0.1, 5.0 / 60.0, 10));
}

TEST_CASE("doubling the sample period removes one level") {
    const double f = center_frequency(WaveletSpec(NamedWavelet::Daubechies3));
    const int j = select_levels(f, 0.1, 5.0 / 60.0, 12);
    REQUIRE(j > 1);
    REQUIRE(j < 12);
    CHECK(select_levels(f, 0.2, 5.0 / 60.0, 12) == j - 1);
}

TEST_CASE("ties go to fewer levels") {
    // fc halfway between the level-3 and level-4 pseudo-frequencies of f_psi = 1, T_s = 1
    const double mid = (1.0 / 8.0 + 1.0 / 16.0) / 2.0;
    CHECK(select_levels(1.0, 1.0, mid, 8) == 3);
}

TEST_CASE("scale errors") {
    CHECK_THROWS_AS(select_levels(0.0, 0.1, 0.1, 8), InvalidParameter);
    CHECK_THROWS_AS(select_levels(0.8, -0.1, 0.1, 8), InvalidParameter);
    CHECK_THROWS_AS(select_levels(0.8, 0.1, 0.1, 0), InvalidParameter);
    CHECK(parse_species("human") == Species::Human);
    CHECK(dominant_cpm(Species::Canine) == 5.0);
    CHECK_THROWS_AS(parse_species("feline"), InvalidParameter);
}
