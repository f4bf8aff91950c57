#include "fixtures.hpp"

#include "ncoop/errors.hpp"
#include "ncoop/montecarlo.hpp"

#include <doctest.h>

#include <cmath>

using namespace ncoop;
using namespace fixtures;

namespace {

bool overlap(const BerEstimate& a, const BerEstimate& b) {
    return a.ci95.low <= b.ci95.high && b.ci95.low <= a.ci95.high;
}

} // namespace

TEST_CASE("Wilson interval") {
    auto w = wilson95(0, 100);
    CHECK(w.low == 0.0);
    CHECK(w.high > 0.0);
    CHECK(w.high < 0.05);
    w = wilson95(100, 100);
    CHECK(w.high == doctest::Approx(1.0));
    for (std::uint64_t e : {1u, 7u, 50u, 500u}) {
        w = wilson95(e, 1000);
        CHECK(w.low < e / 1000.0);
        CHECK(w.high > e / 1000.0);
    }
    // textbook value: 10/100 -> [0.0552, 0.1744]
    w = wilson95(10, 100);
    CHECK(w.low == doctest::Approx(0.05523).epsilon(1e-3));
    CHECK(w.high == doctest::Approx(0.17437).epsilon(1e-3));
}

TEST_CASE("stop rule and grid validation") {
    auto sc = iid(fig1());
    CHECK_THROWS_AS(run_ber(sc, 10.0, DetectorKind::Cmrc, {0, 10}, 1), InvalidArgument);
    CHECK_THROWS_AS(run_ber(sc, 10.0, DetectorKind::Cmrc, {10, 0}, 1), InvalidArgument);
    CHECK_THROWS_AS(run_sweep(sc, {}, DetectorKind::Cmrc, {}, 1), InvalidArgument);
    CHECK_THROWS_AS(run_sweep(sc, {10.0, 5.0}, DetectorKind::Cmrc, {}, 1), InvalidArgument);
    auto bad = iid(NetworkCode::full(2, {{0, 0}}));
    CHECK_THROWS_AS(run_ber(bad, 10.0, DetectorKind::Cmrc, {}, 1), InvalidCode);
}

TEST_CASE("noise-dominated regime gives coin flips") {
    auto sc = iid(fig4());
    for (auto kind : {DetectorKind::Cmrc, DetectorKind::Ml}) {
        auto est = run_ber(sc, -60.0, kind, {1'000'000, 40000}, 3);
        REQUIRE(est.size() == 4);
        for (const auto& b : est) {
            CHECK(b.ci95.low <= 0.5);
            CHECK(b.ci95.high >= 0.5);
            CHECK(b.budget_exhausted);
            CHECK(b.trials == 40000);
        }
    }
}

TEST_CASE("single link matches the Rayleigh BPSK oracle") {
    auto sc = iid(NetworkCode(1, {}));
    const double gbar = 10.0, p = 0.5 * (1.0 - std::sqrt(gbar / (1.0 + gbar)));
    for (bool full : {false, true}) {
        McOptions opt;
        opt.full_frames = full;
        auto b = run_ber(sc, 10.0, DetectorKind::Cmrc, {5000, 10'000'000}, 4, opt)[0];
        CHECK(b.ci95.low <= p);
        CHECK(b.ci95.high >= p);
        CHECK_FALSE(b.budget_exhausted);
    }
}

TEST_CASE("decision-statistic kernel agrees with full frames") {
    for (const auto& code : {fig4(), fig6()}) {
        auto sc = iid(code);
        for (auto kind : {DetectorKind::Cmrc, DetectorKind::Ml}) {
            McOptions full;
            full.full_frames = true;
            auto a = run_ber(sc, 8.0, kind, {1000, 4'000'000}, 5);
            auto b = run_ber(sc, 8.0, kind, {1000, 4'000'000}, 6, full);
            for (std::size_t j = 0; j < a.size(); ++j) {
                const double sd = std::sqrt(a[j].ber * (1 - a[j].ber) / a[j].trials + b[j].ber * (1 - b[j].ber) / b[j].trials);
                CHECK(std::abs(a[j].ber - b[j].ber) < 4.0 * sd);
            }
        }
    }
}

TEST_CASE("results do not depend on the thread count") {
    auto sc = iid(fig5());
    McOptions one, three;
    one.threads = 1;
    one.chunk_frames = 1000;
    three.threads = 3;
    three.chunk_frames = 1000;
    for (auto kind : {DetectorKind::Cmrc, DetectorKind::Ml}) {
        auto a = run_ber(sc, 10.0, kind, {100, 500'000}, 77, one);
        auto b = run_ber(sc, 10.0, kind, {100, 500'000}, 77, three);
        for (std::size_t j = 0; j < a.size(); ++j) {
            CHECK(a[j].errors == b[j].errors);
            CHECK(a[j].trials == b[j].trials);
        }
    }
    // max_frames that is not a chunk multiple
    auto a = run_ber(sc, 0.0, DetectorKind::Cmrc, {1'000'000, 2500}, 1, one);
    auto b = run_ber(sc, 0.0, DetectorKind::Cmrc, {1'000'000, 2500}, 1, three);
    CHECK(a[0].trials == 2500);
    CHECK(a[0].errors == b[0].errors);
}

TEST_CASE("sweep: seeds follow the grid index, BER falls with SNR") {
    auto sc = iid(fig1());
    const StopRule stop{200, 5'000'000};
    auto sweep = run_sweep(sc, {0.0, 5.0, 10.0, 15.0}, DetectorKind::Cmrc, stop, 10);
    REQUIRE(sweep.size() == 4);
    auto single = run_ber(sc, 10.0, DetectorKind::Cmrc, stop, 12);
    CHECK(single[0].errors == sweep[2].nodes[0].errors);
    CHECK(single[1].trials == sweep[2].nodes[1].trials);
    auto one = run_sweep(sc, {5.0}, DetectorKind::Cmrc, stop, 11);
    CHECK(one[0].nodes[0].errors == sweep[1].nodes[0].errors);
    for (std::size_t i = 1; i < sweep.size(); ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(sweep[i].nodes[j].ci95.low <= sweep[i - 1].nodes[j].ci95.high);
}

TEST_CASE("ML is no worse than C-MRC") {
    auto sc = iid(fig1());
    for (double db : {5.0, 10.0}) {
        auto ml = run_ber(sc, db, DetectorKind::Ml, {300, 5'000'000}, 21);
        auto cm = run_ber(sc, db, DetectorKind::Cmrc, {300, 5'000'000}, 21);
        for (std::size_t j = 0; j < 2; ++j) CHECK(ml[j].ci95.low <= cm[j].ci95.high);
    }
}

TEST_CASE("random network coding runs draw a code per frame") {
    auto sc = iid(fig7());
    sc.random_nc = true;
    McOptions full;
    full.full_frames = true;
    auto a = run_ber(sc, 15.0, DetectorKind::Cmrc, {300, 5'000'000}, 8);
    auto b = run_ber(sc, 15.0, DetectorKind::Cmrc, {300, 5'000'000}, 9, full);
    for (std::size_t j = 0; j < 3; ++j) CHECK(overlap(a[j], b[j]));
    // all three sources are statistically equivalent under random coding
    CHECK(overlap(a[0], a[2]));
}
