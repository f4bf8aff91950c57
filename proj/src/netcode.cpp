#include "ncoop/netcode.hpp"

#include "ncoop/errors.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>

namespace ncoop {

namespace {

constexpr std::size_t kMaxInfoBits = 24;

std::uint64_t source_mask_bits(const EncodingVector& g) {
    std::uint64_t m = 0;
    for (std::size_t t = 0; t < g.source_mask.size(); ++t)
        if (g.source_mask[t]) m |= std::uint64_t{1} << t;
    return m;
}

void require_node(const NetworkCode& code, std::size_t node) {
    if (node >= code.n_info())
        throw InvalidArgument("node " + std::to_string(node) +
                              " is neither a source nor a partial-cooperative relay");
}

} // namespace

NetworkCode::NetworkCode(std::size_t n_sources, std::vector<Relay> relays)
    : n_sources_(n_sources) {
    if (n_sources == 0) throw InvalidArgument("network needs at least one source");
    if (n_sources + relays.size() > 64) throw TooLarge("more than 64 nodes");
    for (std::size_t q = 0; q < relays.size(); ++q) {
        if (relays[q].g.source_mask.size() != n_sources)
            throw InvalidCode("relay " + std::to_string(q) + ": encoding vector has " +
                              std::to_string(relays[q].g.source_mask.size()) +
                              " entries, expected " + std::to_string(n_sources));
        relays[q].g.self_bit = relays[q].cls == RelayClass::Partial;
    }
    std::stable_partition(relays.begin(), relays.end(),
                          [](const Relay& r) { return r.cls == RelayClass::Partial; });
    n_pc_ = static_cast<std::size_t>(std::count_if(
        relays.begin(), relays.end(), [](const Relay& r) { return r.cls == RelayClass::Partial; }));
    relays_ = std::move(relays);
}

NetworkCode NetworkCode::full(std::size_t n_sources, const std::vector<Bits>& vectors) {
    std::vector<Relay> relays;
    for (const auto& v : vectors) relays.push_back({RelayClass::Full, {v, false}});
    return NetworkCode(n_sources, std::move(relays));
}

void NetworkCode::validate() const {
    for (std::size_t q = n_pc_; q < relays_.size(); ++q) {
        const auto& m = relays_[q].g.source_mask;
        if (std::none_of(m.begin(), m.end(), [](std::uint8_t b) { return b != 0; }))
            throw InvalidCode("full-cooperative relay R" + std::to_string(q + 1) +
                              " has an all-zero encoding vector (it would transmit a constant)");
    }
}

NetworkCode NetworkCode::fc_subnetwork() const {
    return NetworkCode(n_sources_, std::vector<Relay>(relays_.begin() + static_cast<std::ptrdiff_t>(n_pc_),
                                                      relays_.end()));
}

std::size_t Codeword::weight() const {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::size_t Codeword::systematic_weight() const {
    return static_cast<std::size_t>(
        std::count(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(n_sources), std::uint8_t{1}));
}

std::size_t Codeword::parity_weight() const { return weight() - systematic_weight(); }

std::uint64_t Codeword::mask() const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) m |= std::uint64_t{1} << i;
    return m;
}

std::string Codeword::str() const {
    std::string s;
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

Codeword codeword_from_mask(std::uint64_t mask, std::size_t length, std::size_t n_sources) {
    Codeword c{Bits(length, 0), n_sources};
    for (std::size_t i = 0; i < length; ++i) c.bits[i] = (mask >> i) & 1U;
    return c;
}

Bits BitMatrix::row(std::size_t r) const {
    return Bits(data.begin() + static_cast<std::ptrdiff_t>(r * cols),
                data.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
}

std::uint64_t BitMatrix::column_mask(std::size_t c) const {
    std::uint64_t m = 0;
    for (std::size_t r = 0; r < rows; ++r)
        if (at(r, c)) m |= std::uint64_t{1} << r;
    return m;
}

std::string BitMatrix::dump() const {
    std::string s;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) s.push_back(at(r, c) ? '1' : '0');
        s.push_back('\n');
    }
    return s;
}

GeneratorMatrix build_generator(const NetworkCode& code) {
    code.validate();
    const std::size_t ns = code.n_sources(), npc = code.n_pc();
    GeneratorMatrix g(code.n_info(), code.length());
    for (std::size_t t = 0; t < ns; ++t) {
        g.at(t, t) = 1;
        for (std::size_t q = 0; q < code.n_relays(); ++q) g.at(t, ns + q) = code.codes(q, t);
    }
    for (std::size_t p = 0; p < npc; ++p) g.at(ns + p, ns + p) = 1;
    return g;
}

ParityCheckMatrix build_parity_check(const NetworkCode& code) {
    code.validate();
    const std::size_t ns = code.n_sources(), npc = code.n_pc();
    ParityCheckMatrix h(code.n_fc(), code.length());
    for (std::size_t f = 0; f < code.n_fc(); ++f) {
        const std::size_t q = npc + f;
        for (std::size_t t = 0; t < ns; ++t) h.at(f, t) = code.codes(q, t);
        h.at(f, ns + q) = 1;
    }
    return h;
}

Codeword encode(const Bits& info, const NetworkCode& code) {
    if (info.size() != code.n_info())
        throw LengthMismatch("info vector has " + std::to_string(info.size()) + " bits, expected " +
                             std::to_string(code.n_info()));
    const std::size_t ns = code.n_sources();
    Codeword c{Bits(code.length(), 0), ns};
    for (std::size_t t = 0; t < ns; ++t) c.bits[t] = info[t] & 1U;
    for (std::size_t q = 0; q < code.n_relays(); ++q) {
        std::uint8_t bit = code.is_partial(q) ? (info[ns + q] & 1U) : 0;
        for (std::size_t t = 0; t < ns; ++t) bit ^= static_cast<std::uint8_t>(code.codes(q, t) & c.bits[t]);
        c.bits[ns + q] = bit;
    }
    return c;
}

std::vector<std::uint64_t> codebook_masks(const NetworkCode& code) {
    std::vector<std::uint64_t> out;
    codebook_masks(code, out);
    return out;
}

void codebook_masks(const NetworkCode& code, std::vector<std::uint64_t>& out) {
    const std::size_t k = code.n_info(), ns = code.n_sources();
    if (k > kMaxInfoBits) throw TooLarge(std::to_string(k) + " info bits exceed the enumeration limit");
    out.resize(std::size_t{1} << k);
    for (std::uint64_t i = 0; i < out.size(); ++i) {
        // info[j] is bit k-1-j of i
        std::uint64_t src = 0;
        for (std::size_t t = 0; t < ns; ++t) src |= ((i >> (k - 1 - t)) & 1U) << t;
        std::uint64_t cw = src;
        for (std::size_t q = 0; q < code.n_relays(); ++q) {
            std::uint64_t bit = std::popcount(source_mask_bits(code.relay(q).g) & src) & 1U;
            if (code.is_partial(q)) bit ^= (i >> (k - 1 - ns - q)) & 1U;
            cw |= bit << (ns + q);
        }
        out[i] = cw;
    }
}

std::vector<Codeword> enumerate_codebook(const NetworkCode& code) {
    code.validate();
    std::vector<Codeword> out;
    for (auto m : codebook_masks(code)) out.push_back(codeword_from_mask(m, code.length(), code.n_sources()));
    return out;
}

std::size_t separation_vector(const NetworkCode& code, std::size_t node) {
    require_node(code, node);
    code.validate();
    int best = std::numeric_limits<int>::max();
    for (auto m : codebook_masks(code))
        if ((m >> node) & 1U) best = std::min(best, std::popcount(m));
    return static_cast<std::size_t>(best);
}

std::vector<std::size_t> separation_vectors(const NetworkCode& code) {
    std::vector<std::size_t> sv;
    for (std::size_t n = 0; n < code.n_info(); ++n) sv.push_back(separation_vector(code, n));
    return sv;
}

std::size_t sv_via_parity_check(const ParityCheckMatrix& pcm, std::size_t column) {
    if (column >= pcm.cols) throw InvalidArgument("column out of range");
    const std::uint64_t target = pcm.column_mask(column);
    if (target == 0) return 1;

    // zero columns never shorten a dependency, so they are skipped
    std::vector<std::uint64_t> others;
    for (std::size_t c = 0; c < pcm.cols; ++c) {
        if (c == column) continue;
        auto m = pcm.column_mask(c);
        if (m != 0) others.push_back(m);
    }

    // exhaustive search by subset size
    std::function<bool(std::size_t, std::size_t, std::uint64_t)> search =
        [&](std::size_t start, std::size_t left, std::uint64_t acc) -> bool {
        if (left == 0) return acc == target;
        for (std::size_t i = start; i + left <= others.size(); ++i)
            if (search(i + 1, left - 1, acc ^ others[i])) return true;
        return false;
    };
    for (std::size_t size = 1; size <= others.size(); ++size)
        if (search(0, size, 0)) return size + 1;
    throw InvalidCode("column " + std::to_string(column) + " is independent of the others");
}

NetworkCode random_code(std::size_t n_sources, std::size_t n_fc_relays, std::uint64_t seed) {
    if (n_sources == 0 || n_fc_relays == 0)
        throw InvalidArgument("random_code needs at least one source and one full-cooperative relay");
    std::vector<Relay> relays(n_fc_relays, Relay{RelayClass::Full, {Bits(n_sources, 0), false}});
    NetworkCode code(n_sources, std::move(relays));
    std::mt19937_64 rng(seed);
    randomize_code(code, rng);
    return code;
}

std::string node_label(const NetworkCode& code, std::size_t node) {
    if (node < code.n_sources()) return "S" + std::to_string(node + 1);
    return "R" + std::to_string(node - code.n_sources() + 1);
}

} // namespace ncoop
