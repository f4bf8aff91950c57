#include "fixtures.hpp"

#include "ncoop/errors.hpp"
#include "ncoop/netcode.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace ncoop;
using namespace fixtures;

namespace {

Bits bits(std::initializer_list<int> v) {
    Bits b;
    for (int x : v) b.push_back(static_cast<std::uint8_t>(x));
    return b;
}

std::string rows(std::initializer_list<const char*> r) {
    std::string s;
    for (auto* x : r) s += std::string(x) + "\n";
    return s;
}

// FC code with no all-zero vector
NetworkCode random_valid_code(std::mt19937_64& rng, std::size_t ns, std::size_t nfc) {
    for (;;) {
        NetworkCode c = NetworkCode::full(ns, std::vector<Bits>(nfc, Bits(ns, 0)));
        randomize_code(c, rng);
        try {
            c.validate();
            return c;
        } catch (const InvalidCode&) {
        }
    }
}

} // namespace

TEST_CASE("generator matrix of the two-relay code") {
    CHECK(build_generator(fig1()).dump() == rows({"1011", "0101"}));
}

TEST_CASE("generator matrix: one source, no relays") {
    auto g = build_generator(NetworkCode(1, {}));
    CHECK(g.dump() == "1\n");
}

TEST_CASE("generator matrix with a partial-cooperative relay") {
    auto g = build_generator(NetworkCode(2, {pc({1, 1})}));
    CHECK(g.dump() == rows({"101", "011", "001"}));
}

TEST_CASE("parity-check matrices") {
    CHECK(build_parity_check(fig1()).dump() == rows({"1010", "1101"}));
    CHECK(build_parity_check(single_relay(2)).dump() == "111\n");
    auto h = build_parity_check(NetworkCode(2, {pc({1, 1})}));
    CHECK(h.rows == 0);
    CHECK(h.cols == 3);
}

TEST_CASE("G H^T = 0 and H = [G_fc^T | 0 | I] on random codes") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t ns = 1 + rng() % 4, npc = rng() % 3, nfc = 1 + rng() % 4;
        std::vector<Relay> relays;
        for (std::size_t q = 0; q < npc + nfc; ++q) {
            Bits g(ns);
            for (auto& b : g) b = rng() & 1U;
            if (q >= npc && std::none_of(g.begin(), g.end(), [](auto b) { return b; })) g[0] = 1;
            relays.push_back(q < npc ? pc(g) : fc(g));
        }
        NetworkCode code(ns, relays);
        auto G = build_generator(code);
        auto H = build_parity_check(code);
        for (std::size_t i = 0; i < G.rows; ++i)
            for (std::size_t j = 0; j < H.rows; ++j) {
                unsigned acc = 0;
                for (std::size_t k = 0; k < G.cols; ++k) acc ^= G.at(i, k) & H.at(j, k);
                CHECK(acc == 0);
            }
        for (std::size_t f = 0; f < H.rows; ++f) {
            for (std::size_t t = 0; t < ns; ++t) CHECK(H.at(f, t) == G.at(t, ns + npc + f));
            for (std::size_t q = 0; q < npc + nfc; ++q) CHECK(H.at(f, ns + q) == (q == npc + f ? 1 : 0));
        }
        // encode(e_i) is row i
        for (std::size_t i = 0; i < code.n_info(); ++i) {
            Bits e(code.n_info(), 0);
            e[i] = 1;
            CHECK(encode(e, code).bits == G.row(i));
        }
    }
}

TEST_CASE("encode") {
    auto code = fig1();
    CHECK(encode(bits({0, 0}), code).str() == "0000");
    CHECK(encode(bits({1, 0}), code).str() == "1011");
    CHECK(encode(bits({1, 1}), code).str() == "1110");
    CHECK_THROWS_AS(encode(bits({1}), code), LengthMismatch);
    auto c = encode(bits({1, 1}), code);
    CHECK(c.weight() == c.systematic_weight() + c.parity_weight());
    CHECK(c.systematic_weight() == 2);
}

TEST_CASE("codebook") {
    std::set<std::string> words;
    for (const auto& c : enumerate_codebook(fig1())) words.insert(c.str());
    CHECK(words == std::set<std::string>{"0000", "1011", "0101", "1110"});

    auto single = enumerate_codebook(NetworkCode(1, {}));
    REQUIRE(single.size() == 2);
    CHECK(single[0].str() == "0");
    CHECK(single[1].str() == "1");

    for (const auto& code : {fig3(), fig4(), fig5(), fig6(), fig7()}) {
        auto book = codebook_masks(code);
        std::set<std::uint64_t> s(book.begin(), book.end());
        CHECK(s.size() == book.size());
        CHECK(s.count(0) == 1);
        for (auto a : book)
            for (auto b : book) CHECK(s.count(a ^ b) == 1);
    }
}

TEST_CASE("codebook size guard") {
    NetworkCode big(25, {});
    CHECK_THROWS_AS(enumerate_codebook(big), TooLarge);
    CHECK_THROWS_AS(NetworkCode(60, std::vector<Relay>(5, fc(Bits(60, 1)))), TooLarge);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(NetworkCode::full(2, {{1, 0, 1}}), InvalidCode);
    auto zero = NetworkCode::full(2, {{1, 0}, {0, 0}});
    CHECK_THROWS_AS(zero.validate(), InvalidCode);
    CHECK_THROWS_AS(build_generator(zero), InvalidCode);
    CHECK_THROWS_AS(build_parity_check(zero), InvalidCode);
    // an all-zero PC vector is allowed: the relay still carries its own bit
    CHECK_NOTHROW(NetworkCode(2, {pc({0, 0})}).validate());
}

TEST_CASE("partial-cooperative relays are stored first") {
    NetworkCode code(2, {fc({1, 1}), pc({1, 0}), fc({0, 1}), pc({0, 1})});
    REQUIRE(code.n_pc() == 2);
    CHECK(code.relay(0).g.source_mask == bits({1, 0}));
    CHECK(code.relay(1).g.source_mask == bits({0, 1}));
    CHECK(code.relay(2).g.source_mask == bits({1, 1}));
    CHECK(code.relay(3).g.source_mask == bits({0, 1}));
    CHECK(code.relay(0).g.self_bit);
    CHECK_FALSE(code.relay(2).g.self_bit);
    CHECK(code.fc_subnetwork().n_relays() == 2);
    CHECK(code.fc_subnetwork().n_pc() == 0);
}

TEST_CASE("separation vectors of the figure codes") {
    CHECK(separation_vectors(fig1()) == std::vector<std::size_t>{3, 2});
    CHECK(separation_vectors(fig3()) == std::vector<std::size_t>{5, 4});
    CHECK(separation_vectors(fig4()) == std::vector<std::size_t>{3, 3, 1, 1});
    CHECK(separation_vectors(fig5()) == std::vector<std::size_t>{4, 2, 2});
    CHECK(separation_vectors(fig6()) == std::vector<std::size_t>{3, 2, 1, 1});
    CHECK(separation_vectors(fig7()) == std::vector<std::size_t>{3, 2, 1});
    CHECK_THROWS_AS(separation_vector(fig1(), 2), InvalidArgument);
}

TEST_CASE("separation vector via the parity-check matrix") {
    CHECK(sv_via_parity_check(build_parity_check(fig1()), 1) == 2);
    auto h5 = build_parity_check(fig5());
    CHECK(sv_via_parity_check(h5, 0) == 4);
    CHECK(sv_via_parity_check(h5, 1) == 2);
    CHECK(sv_via_parity_check(h5, 2) == 2);
    CHECK(sv_via_parity_check(build_parity_check(fig7()), 2) == 1); // all-zero column
}

TEST_CASE("property: both separation-vector methods agree") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t ns = 1 + rng() % 5, nfc = 1 + rng() % 6;
        auto code = random_valid_code(rng, ns, nfc);
        auto h = build_parity_check(code);
        for (std::size_t t = 0; t < ns; ++t) {
            const auto sv = separation_vector(code, t);
            CHECK(sv == sv_via_parity_check(h, t));
            CHECK(sv >= 1);
            CHECK(sv <= nfc + 1);
        }
    }
}

TEST_CASE("property: PC relays have SV 1") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t ns = 1 + rng() % 3;
        std::vector<Relay> relays;
        for (int q = 0; q < 2; ++q) {
            Bits g(ns);
            for (auto& b : g) b = rng() & 1U;
            relays.push_back(pc(g));
        }
        relays.push_back(fc(Bits(ns, 1)));
        NetworkCode code(ns, relays);
        CHECK(separation_vector(code, ns) == 1);
        CHECK(separation_vector(code, ns + 1) == 1);
    }
}

TEST_CASE("property: shared encoding vector gives SV 2 for coded sources") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t ns = 2 + rng() % 4, nfc = 1 + rng() % 4;
        Bits g(ns, 0);
        while (std::count(g.begin(), g.end(), 1) < 2)
            for (auto& b : g) b = rng() & 1U;
        auto code = NetworkCode::full(ns, std::vector<Bits>(nfc, g));
        for (std::size_t t = 0; t < ns; ++t) CHECK(separation_vector(code, t) == (g[t] ? 2U : 1U));
    }
    auto ones = NetworkCode::full(4, std::vector<Bits>(3, Bits(4, 1)));
    CHECK(separation_vectors(ones) == std::vector<std::size_t>(4, 2));
}

TEST_CASE("property: repetition codes give SV = 1 + repeats") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t ns = 1 + rng() % 4, nfc = 1 + rng() % 5;
        std::vector<Bits> vecs;
        std::vector<std::size_t> repeats(ns, 0);
        for (std::size_t q = 0; q < nfc; ++q) {
            const std::size_t t = rng() % ns;
            Bits g(ns, 0);
            g[t] = 1;
            ++repeats[t];
            vecs.push_back(g);
        }
        auto code = NetworkCode::full(ns, vecs);
        for (std::size_t t = 0; t < ns; ++t) CHECK(separation_vector(code, t) == 1 + repeats[t]);
    }
}

TEST_CASE("random_code") {
    auto a = random_code(3, 4, 99), b = random_code(3, 4, 99);
    for (std::size_t q = 0; q < 4; ++q) {
        CHECK(a.relay(q).g.source_mask == b.relay(q).g.source_mask);
        CHECK(a.relay(q).cls == RelayClass::Full);
    }
    CHECK_THROWS_AS(random_code(3, 0, 1), InvalidArgument);
    CHECK_THROWS_AS(random_code(0, 2, 1), InvalidArgument);

    // all-zero column frequency of S1: 2^-nfc
    const std::size_t nfc = 3, seeds = 100000;
    std::size_t zero = 0;
    for (std::size_t s = 0; s < seeds; ++s) {
        auto c = random_code(2, nfc, s);
        bool any = false;
        for (std::size_t q = 0; q < nfc; ++q) any = any || c.codes(q, 0);
        zero += any ? 0 : 1;
    }
    const double p = 1.0 / 8.0, f = static_cast<double>(zero) / seeds;
    CHECK(std::abs(f - p) < 4.0 * std::sqrt(p * (1 - p) / seeds));
}

TEST_CASE("node labels") {
    auto code = fig4();
    CHECK(node_label(code, 0) == "S1");
    CHECK(node_label(code, 2) == "R1");
    CHECK(node_label(code, 6) == "R5");
}
