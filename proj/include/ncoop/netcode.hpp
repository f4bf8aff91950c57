#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace ncoop {

using Bits = std::vector<std::uint8_t>;

enum class RelayClass { Full, Partial };

struct EncodingVector {
    Bits source_mask;      // entry t: relay codes source t
    bool self_bit = false; // relay XORs its own buffer bit (partial cooperation)
};

struct Relay {
    RelayClass cls = RelayClass::Full;
    EncodingVector g;
};

/// Binary network code. Relays are stored with partial-cooperative ones
/// first; the constructor reorders stably and sets self_bit from the class.
class NetworkCode {
public:
    NetworkCode() = default;
    NetworkCode(std::size_t n_sources, std::vector<Relay> relays);

    /// Convenience: every vector is full-cooperative.
    static NetworkCode full(std::size_t n_sources, const std::vector<Bits>& vectors);

    std::size_t n_sources() const { return n_sources_; }
    std::size_t n_relays() const { return relays_.size(); }
    std::size_t n_pc() const { return n_pc_; }
    std::size_t n_fc() const { return relays_.size() - n_pc_; }
    std::size_t n_info() const { return n_sources_ + n_pc_; }
    std::size_t length() const { return n_sources_ + relays_.size(); }

    const std::vector<Relay>& relays() const { return relays_; }
    const Relay& relay(std::size_t q) const { return relays_.at(q); }
    bool is_partial(std::size_t q) const { return q < n_pc_; }
    bool codes(std::size_t q, std::size_t t) const { return relays_[q].g.source_mask[t] != 0; }

    /// Throws InvalidCode if a full-cooperative relay has an all-zero vector.
    void validate() const;

    /// Same code without its partial-cooperative relays.
    NetworkCode fc_subnetwork() const;

    /// Sets g_{S_t R_q} in place (random-NC runs redraw the code every frame).
    void set_coefficient(std::size_t q, std::size_t t, bool bit) { relays_[q].g.source_mask[t] = bit; }

private:
    std::size_t n_sources_ = 0;
    std::size_t n_pc_ = 0;
    std::vector<Relay> relays_;
};

struct Codeword {
    Bits bits;
    std::size_t n_sources = 0;

    std::size_t weight() const;
    std::size_t systematic_weight() const;
    std::size_t parity_weight() const;
    std::uint64_t mask() const; // bit i = position i
    std::string str() const;

    bool operator==(const Codeword& o) const { return bits == o.bits && n_sources == o.n_sources; }
};

Codeword codeword_from_mask(std::uint64_t mask, std::size_t length, std::size_t n_sources);

struct BitMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    Bits data;

    BitMatrix() = default;
    BitMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

    std::uint8_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    Bits row(std::size_t r) const;
    std::uint64_t column_mask(std::size_t c) const; // bit r = entry (r, c)

    /// Rows of 0/1 characters, one per line.
    std::string dump() const;
};

using GeneratorMatrix = BitMatrix;
using ParityCheckMatrix = BitMatrix;

GeneratorMatrix build_generator(const NetworkCode& code);
ParityCheckMatrix build_parity_check(const NetworkCode& code);

/// c = b G. info holds the source bits followed by the PC-relay buffer bits.
Codeword encode(const Bits& info, const NetworkCode& code);

/// Codeword of every info vector; index order is lexicographic in the info
/// vector (info[0] most significant). Does not validate the code.
std::vector<std::uint64_t> codebook_masks(const NetworkCode& code);
void codebook_masks(const NetworkCode& code, std::vector<std::uint64_t>& out);

std::vector<Codeword> enumerate_codebook(const NetworkCode& code);

/// Node ids: sources 0..N_S-1, relays N_S..N_S+N_R-1. node must be a source
/// or a partial-cooperative relay.
std::size_t separation_vector(const NetworkCode& code, std::size_t node);

std::vector<std::size_t> separation_vectors(const NetworkCode& code);

std::size_t sv_via_parity_check(const ParityCheckMatrix& pcm, std::size_t column);

NetworkCode random_code(std::size_t n_sources, std::size_t n_fc_relays, std::uint64_t seed);

/// Redraws every coefficient as a fair bit from a 64-bit engine.
template <class Engine>
void randomize_code(NetworkCode& code, Engine& eng) {
    std::uint64_t word = eng();
    unsigned used = 0;
    for (std::size_t q = 0; q < code.n_relays(); ++q)
        for (std::size_t t = 0; t < code.n_sources(); ++t) {
            if (used == 64) {
                word = eng();
                used = 0;
            }
            code.set_coefficient(q, t, (word >> used++) & 1U);
        }
}

std::string node_label(const NetworkCode& code, std::size_t node);

} // namespace ncoop
