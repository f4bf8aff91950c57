#include "fixtures.hpp"

#include "ncoop/analysis.hpp"
#include "ncoop/errors.hpp"
#include "ncoop/protocol.hpp"

#include <doctest.h>

#include <cmath>

using namespace ncoop;
using namespace fixtures;

TEST_CASE("relay demodulation, noiseless") {
    const cplx h{0.3, -1.2};
    const double e = 4.0;
    CHECK(relay_demodulate(std::sqrt(e) * h, h, e) == 0);
    CHECK(relay_demodulate(-std::sqrt(e) * h, h, e) == 1);
    CHECK(relay_demodulate({0.0, 0.0}, h, e) == 0); // tie
}

TEST_CASE("relay demodulation BER over Rayleigh fading") {
    const double gbar = 10.0;
    Rng rng(3);
    const int n = 1'000'000;
    int errors = 0;
    for (int i = 0; i < n; ++i) {
        const cplx h = draw_gain(1.0, rng);
        const double nre = rng.normal();
        const cplx noise{std::sqrt(0.5) * nre, std::sqrt(0.5) * rng.normal()};
        errors += relay_demodulate(std::sqrt(gbar) * h + noise, h, gbar);
    }
    const double p = 0.5 * (1.0 - std::sqrt(gbar / (1.0 + gbar)));
    const double sd = std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(static_cast<double>(errors) / n - p) < 3.0 * sd);
}

TEST_CASE("nc_bit_error_prob") {
    const EncodingVector one{{1}, false}, two{{1, 1}, false};
    CHECK(nc_bit_error_prob({0.7}, one) == doctest::Approx(q_function(std::sqrt(1.4))).epsilon(1e-14));
    CHECK(nc_bit_error_prob({1e6, 1e6}, two) == 0.0);
    for (double g : {0.1, 1.0, 3.0}) {
        const double p = q_function(std::sqrt(2 * g));
        CHECK(nc_bit_error_prob({g, g}, two) == doctest::Approx(2 * p * (1 - p)).epsilon(1e-13));
    }
    // brute-force XOR of three independent binary symmetric channels
    const std::vector<double> gs{0.2, 1.1, 0.6};
    double brute = 0.0;
    for (int pattern = 0; pattern < 8; ++pattern) {
        double pr = 1.0;
        for (int t = 0; t < 3; ++t) {
            const double p = q_function(std::sqrt(2 * gs[t]));
            pr *= (pattern >> t) & 1 ? p : 1 - p;
        }
        if (__builtin_popcount(pattern) % 2) brute += pr;
    }
    CHECK(nc_bit_error_prob(gs, {{1, 1, 1}, false}) == doctest::Approx(brute).epsilon(1e-13));
    // uncoded SNRs do not matter; coded ones only help
    const EncodingVector m{{1, 0, 1}, false};
    CHECK(nc_bit_error_prob({0.5, 0.01, 0.9}, m) == nc_bit_error_prob({0.5, 50.0, 0.9}, m));
    double prev = 1.0;
    for (double g = 0.0; g < 5.0; g += 0.25) {
        const double p = nc_bit_error_prob({g, 0.3, 0.4}, {{1, 1, 1}, false});
        CHECK(p <= prev);
        CHECK(p <= 0.5);
        CHECK(p >= 0.0);
        prev = p;
    }
}

TEST_CASE("noiseless frames follow the code") {
    auto sc = iid(fig6());
    Rng rng(4);
    FrameOptions opt;
    opt.noise_scale = 0.0;
    for (int i = 0; i < 200; ++i) {
        auto f = simulate_frame(sc, 10.0, rng, opt);
        const auto c = encode(f.info(), sc.code);
        for (std::size_t q = 0; q < sc.code.n_relays(); ++q) CHECK(f.relay_nc_bits[q] == c.bits[3 + q]);
    }
    // zero codeword: matched outputs are positive
    for (int i = 0; i < 50; ++i) {
        FrameRealization f;
        simulate_frame_into(sc, sc.code, 10.0, rng, Bits(4, 0), f, opt);
        for (std::size_t t = 0; t < 3; ++t) CHECK((std::conj(f.fading.h_source_dest[t]) * f.obs.y_source_dest[t]).real() > 0);
        for (std::size_t q = 0; q < 3; ++q) CHECK((std::conj(f.fading.h_relay_dest[q]) * f.obs.y_relay_dest[q]).real() > 0);
    }
}

TEST_CASE("frame invariants at finite SNR") {
    auto sc = iid(fig6());
    Rng rng(5);
    for (int i = 0; i < 500; ++i) {
        auto f = simulate_frame(sc, 3.0, rng);
        for (std::size_t q = 0; q < 3; ++q) {
            std::uint8_t bit = q == 0 ? f.pc_buffer_bits[0] : 0;
            for (std::size_t t = 0; t < 3; ++t) {
                if (sc.code.codes(q, t))
                    bit ^= f.relay_estimates[t][q];
                else
                    CHECK(f.relay_estimates[t][q] == 0);
            }
            CHECK(f.relay_nc_bits[q] == bit);
        }
    }
    CHECK_THROWS_AS(
        [&] {
            FrameRealization f;
            simulate_frame_into(sc, sc.code, 1.0, rng, Bits(2, 0), f);
        }(),
        LengthMismatch);
}

TEST_CASE("relay NC-bit error frequency matches the exact probability") {
    auto sc = iid(fig5());
    const double em = db_to_linear(5.0);
    Rng rng(6);
    const int n = 200000;
    std::vector<double> expected(3, 0.0), observed(3, 0.0);
    std::vector<double> g(3);
    for (int i = 0; i < n; ++i) {
        auto f = simulate_frame(sc, em, rng);
        const auto c = encode(f.info(), sc.code);
        for (std::size_t q = 0; q < 3; ++q) {
            for (std::size_t t = 0; t < 3; ++t) g[t] = f.fading.gamma_source_relay(t, q, sc.policy, em);
            expected[q] += nc_bit_error_prob(g, sc.code.relay(q).g);
            observed[q] += f.relay_nc_bits[q] != c.bits[3 + q];
        }
    }
    for (std::size_t q = 0; q < 3; ++q) {
        const double p = expected[q] / n;
        CHECK(std::abs(observed[q] / n - p) < 4.0 * std::sqrt(p * (1 - p) / n));
    }
}

TEST_CASE("a PC relay's own bit never changes whether its NC bit is right") {
    auto sc = iid(fig4());
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        FrameRealization a, b;
        Rng ra(seed), rb(seed);
        simulate_frame_into(sc, sc.code, 2.0, ra, {1, 0, 0, 0}, a);
        simulate_frame_into(sc, sc.code, 2.0, rb, {1, 0, 1, 1}, b);
        const auto ca = encode(a.info(), sc.code), cb = encode(b.info(), sc.code);
        for (std::size_t q = 0; q < 2; ++q)
            CHECK((a.relay_nc_bits[q] != ca.bits[2 + q]) == (b.relay_nc_bits[q] != cb.bits[2 + q]));
    }
}
