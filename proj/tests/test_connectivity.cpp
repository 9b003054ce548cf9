#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "naive_reference.hpp"
#include "plvkit/connectivity.hpp"
#include "plvkit/errors.hpp"
#include "plvkit/ingest/montage.hpp"
#include "plvkit/synth/rng.hpp"

using namespace plvkit;
using std::numbers::pi;

namespace {

PhaseEpochs make_phases(std::size_t trials, std::size_t channels, std::size_t samples) {
    PhaseEpochs p;
    p.phase = Tensor3(trials, channels, samples);
    for (std::size_t c = 0; c < channels; ++c)
        p.channel_labels.push_back("ch" + std::to_string(c + 1));
    p.sampling_rate = 250.0;
    p.band = {"alpha", 8.0, 13.0};
    return p;
}

PhaseEpochs random_phases(std::size_t trials, std::size_t channels, std::size_t samples,
                          std::uint64_t seed) {
    PhaseEpochs p = make_phases(trials, channels, samples);
    synth::Rng rng(seed);
    for (auto& v : p.phase.flat()) v = rng.next_angle() - pi;
    return p;
}

// Phase differences fixed per trial: channel 0 carries the listed offset,
// channel 1 stays at zero, for every sample.
PhaseEpochs two_channel_offsets(const std::vector<double>& offsets, std::size_t samples = 8) {
    PhaseEpochs p = make_phases(offsets.size(), 2, samples);
    for (std::size_t n = 0; n < offsets.size(); ++n)
        for (std::size_t t = 0; t < samples; ++t) {
            p.phase.at(n, 0, t) = offsets[n];
            p.phase.at(n, 1, t) = 0.0;
        }
    return p;
}

}  // namespace

TEST_CASE("perfect locking gives PLV exactly 1", "[plv]") {
    // Identical phase differences across trials, regardless of the phases
    // themselves varying over trials and time.
    PhaseEpochs p = make_phases(5, 2, 10);
    synth::Rng rng(3);
    for (std::size_t n = 0; n < 5; ++n)
        for (std::size_t t = 0; t < 10; ++t) {
            const double base = rng.next_angle() - pi;
            p.phase.at(n, 0, t) = base;
            p.phase.at(n, 1, t) = base;  // zero lag everywhere
        }
    CHECK(plv_pair(p, 0, 1, 2) == Catch::Approx(1.0).margin(1e-12));

    // Self-comparison is the exact constant 1.
    CHECK(plv_pair(p, 0, 0, 2) == 1.0);
    const auto ts = plv_timeseries(p, 1, 1);
    for (double v : ts) REQUIRE(v == 1.0);
}

TEST_CASE("antiphase trials cancel to PLV 0", "[plv]") {
    const PhaseEpochs p = two_channel_offsets({0.0, pi});
    CHECK(plv_pair(p, 0, 1, 1) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("four orthogonal offsets cancel to PLV 0", "[plv]") {
    const PhaseEpochs p = two_channel_offsets({0.0, pi / 2.0, pi, 3.0 * pi / 2.0});
    CHECK(plv_pair(p, 0, 1, 1) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("half-aligned offsets give PLV sqrt(2)/2", "[plv]") {
    // exp(i*0) twice plus exp(i*pi/2) twice: |2 + 2i| / 4 = sqrt(2)/2.
    const PhaseEpochs p = two_channel_offsets({0.0, 0.0, pi / 2.0, pi / 2.0});
    CHECK(plv_pair(p, 0, 1, 1) ==
          Catch::Approx(0.7071067811865476).margin(1e-12));
}

TEST_CASE("PLV is invariant to a shared phase rotation", "[plv]") {
    PhaseEpochs p = random_phases(12, 2, 30, 99);
    const double before = plv_pair(p, 0, 1, 5);
    for (std::size_t n = 0; n < 12; ++n)
        for (std::size_t t = 0; t < 30; ++t) {
            // Same rotation applied to both channels leaves differences alone
            // (phases are used as differences, so no rewrap is needed).
            p.phase.at(n, 0, t) += 0.91;
            p.phase.at(n, 1, t) += 0.91;
        }
    CHECK(plv_pair(p, 0, 1, 5) == Catch::Approx(before).margin(1e-12));
}

TEST_CASE("PLV is invariant to trial order", "[plv]") {
    const PhaseEpochs p = random_phases(9, 3, 16, 42);
    PhaseEpochs shuffled = make_phases(9, 3, 16);
    shuffled.band = p.band;
    const std::size_t perm[9] = {4, 7, 0, 8, 2, 6, 1, 5, 3};
    for (std::size_t n = 0; n < 9; ++n)
        for (std::size_t c = 0; c < 3; ++c)
            for (std::size_t t = 0; t < 16; ++t)
                shuffled.phase.at(n, c, t) = p.phase.at(perm[n], c, t);
    CHECK(plv_pair(shuffled, 0, 2, 3) ==
          Catch::Approx(plv_pair(p, 0, 2, 3)).margin(1e-12));
}

TEST_CASE("pair order and matrix path agree bit for bit", "[plv]") {
    const PhaseEpochs p = random_phases(11, 6, 40, 2024);
    const std::size_t edge = 7;
    const auto m = plv_matrix(p, edge);
    REQUIRE(m.n_channels == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        REQUIRE(m.at(i, i) == 1.0);
        for (std::size_t k = 0; k < 6; ++k) {
            if (i == k) continue;
            const double direct = plv_pair(p, i, k, edge);
            const double swapped = plv_pair(p, k, i, edge);
            REQUIRE(direct == swapped);       // exact, not approximate
            REQUIRE(m.at(i, k) == direct);    // matrix path identical
            REQUIRE(m.at(i, k) == m.at(k, i));
        }
    }
}

TEST_CASE("optimized PLV matches the brute-force definition", "[plv]") {
    const PhaseEpochs p = random_phases(7, 5, 20, 314159);
    const std::size_t edge = 3;

    const auto ts = plv_timeseries(p, 1, 4);
    REQUIRE(ts.size() == 20);
    for (std::size_t t = 0; t < 20; ++t)
        REQUIRE(ts[t] == Catch::Approx(naive::plv_at_sample(p.phase, 1, 4, t)).margin(1e-12));

    const auto fast = plv_matrix(p, edge);
    const auto slow = naive::plv_matrix(p.phase, edge);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t k = 0; k < 5; ++k)
            REQUIRE(fast.at(i, k) == Catch::Approx(slow[i * 5 + k]).margin(1e-12));
}

TEST_CASE("PLV stays within [0, 1] on arbitrary inputs", "[plv]") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        const PhaseEpochs p = random_phases(4, 3, 12, seed);
        const auto m = plv_matrix(p, 0);
        for (double v : m.values) {
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
        }
    }
}

TEST_CASE("PLV rejects inputs it cannot estimate", "[plv]") {
    SECTION("single trial") {
        const PhaseEpochs p = random_phases(1, 2, 10, 5);
        CHECK_THROWS_AS(plv_pair(p, 0, 1, 2), insufficient_trials_error);
        CHECK_THROWS_AS(plv_matrix(p, 2), insufficient_trials_error);
    }
    SECTION("no trials") {
        const PhaseEpochs p = make_phases(0, 2, 10);
        CHECK_THROWS_AS(plv_pair(p, 0, 1, 2), insufficient_trials_error);
    }
    SECTION("edge exclusion swallows the window") {
        const PhaseEpochs p = random_phases(3, 2, 10, 6);
        CHECK_THROWS_AS(plv_pair(p, 0, 1, 5), config_error);
        CHECK_NOTHROW(plv_pair(p, 0, 1, 4));  // one sample left
    }
    SECTION("channel out of range") {
        const PhaseEpochs p = random_phases(3, 2, 10, 7);
        CHECK_THROWS_AS(plv_pair(p, 0, 2, 1), data_error);
    }
}

namespace {

// 4-channel matrix with distinct off-diagonal values for averaging checks.
PlvMatrix hand_matrix() {
    PlvMatrix m;
    m.n_channels = 4;
    m.values = {
        1.0, 0.10, 0.20, 0.30,
        0.10, 1.0, 0.40, 0.50,
        0.20, 0.40, 1.0, 0.60,
        0.30, 0.50, 0.60, 1.0,
    };
    return m;
}

ingest::Montage two_region_montage() {
    return ingest::parse_montage("c1,M\nc2,M\nc3,V\nc4,V\n", {"c1", "c2", "c3", "c4"});
}

}  // namespace

TEST_CASE("region averages pool the right matrix entries", "[region]") {
    const PlvMatrix m = hand_matrix();
    const ingest::Montage montage = two_region_montage();

    // Within M: single pair (0,1).
    CHECK(region_average(m, montage, Region::M, Region::M).value ==
          Catch::Approx(0.10));
    // Within V: single pair (2,3).
    CHECK(region_average(m, montage, Region::V, Region::V).value ==
          Catch::Approx(0.60));
    // Across M-V: pairs (0,2),(0,3),(1,2),(1,3).
    CHECK(region_average(m, montage, Region::M, Region::V).value ==
          Catch::Approx((0.20 + 0.30 + 0.40 + 0.50) / 4.0));
    // Direction of the query must not matter.
    CHECK(region_average(m, montage, Region::V, Region::M).value ==
          Catch::Approx(region_average(m, montage, Region::M, Region::V).value));
    // All x All: every unordered off-diagonal pair once.
    CHECK(region_average(m, montage, Region::All, Region::All).value ==
          Catch::Approx((0.10 + 0.20 + 0.30 + 0.40 + 0.50 + 0.60) / 6.0));
}

TEST_CASE("region averaging rejects impossible queries", "[region]") {
    const PlvMatrix m = hand_matrix();
    const ingest::Montage montage = two_region_montage();
    // B never appears in this montage.
    CHECK_THROWS_AS(region_average(m, montage, Region::B, Region::B), data_error);
    CHECK_THROWS_AS(region_average(m, montage, Region::B, Region::V), data_error);
    // All overlaps every concrete region on its own channels.
    CHECK_THROWS_AS(region_average(m, montage, Region::All, Region::M), data_error);
    // Montage size must match the matrix.
    const ingest::Montage small = ingest::parse_montage("c1,M\nc2,M\n", {"c1", "c2"});
    CHECK_THROWS_AS(region_average(m, small, Region::M, Region::M), data_error);
}

TEST_CASE("region pair enumeration is the fixed 15-row order", "[region]") {
    const auto pairs = region_pairs();
    REQUIRE(pairs.size() == 15);
    CHECK(pairs.front() == std::make_pair(Region::B, Region::V));
    CHECK(pairs[1] == std::make_pair(Region::B, Region::A));
    CHECK(pairs[5] == std::make_pair(Region::V, Region::A));
    CHECK(pairs.back() == std::make_pair(Region::P, Region::S));
}

TEST_CASE("class table computes per-class mean and sample std", "[class_table]") {
    const std::vector<std::string> subjects{"S1", "S2", "S3"};
    const std::vector<std::string> classes{"water", "yes"};
    const std::vector<std::vector<double>> values{{0.2, 0.5}, {0.4, 0.5}, {0.6, 0.5}};
    const auto table = class_table(subjects, classes, values);
    REQUIRE(table.avg.size() == 2);
    CHECK(table.avg[0] == Catch::Approx(0.4));
    CHECK(table.std_dev[0] == Catch::Approx(0.2));  // sample std of {0.2,0.4,0.6}
    CHECK(table.avg[1] == Catch::Approx(0.5));
    CHECK(table.std_dev[1] == Catch::Approx(0.0).margin(1e-15));
    CHECK(table.values == values);
}

TEST_CASE("class table on a 16-subject column reproduces published-style stats", "[class_table]") {
    // One column of per-subject mean connectivity; the summary row must land
    // on 0.28 +/- 0.06 at two decimals.
    const std::vector<double> column{0.27, 0.46, 0.26, 0.30, 0.24, 0.25, 0.31, 0.33,
                                     0.22, 0.24, 0.30, 0.27, 0.23, 0.23, 0.26, 0.31};
    std::vector<std::string> subjects;
    std::vector<std::vector<double>> values;
    for (std::size_t s = 0; s < column.size(); ++s) {
        subjects.push_back("S" + std::to_string(s + 1));
        values.push_back({column[s]});
    }
    const auto table = class_table(subjects, {"ambulance"}, values);
    CHECK(table.avg[0] == Catch::Approx(0.28).margin(1e-12));
    CHECK(table.std_dev[0] == Catch::Approx(0.05842).margin(5e-5));
}

TEST_CASE("class table validates the grid shape", "[class_table]") {
    CHECK_THROWS_AS(class_table({"S1", "S2"}, {"a"}, {{0.1}}), data_error);
    CHECK_THROWS_AS(class_table({"S1"}, {"a", "b"}, {{0.1}}), data_error);
}
