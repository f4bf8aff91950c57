#pragma once

#include "ncoop/netcode.hpp"

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace ncoop {

using cplx = std::complex<double>;

/// mt19937_64 with ziggurat normal and exponential samplers. Streams for
/// parallel work are derived from (seed, index) through std::seed_seq.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0);
    static Rng stream(std::uint64_t seed, std::uint64_t index);

    using Engine = boost::random::mt19937_64;

    double normal() { return normal_(engine_); }
    double exponential() { return exponential_(engine_); }
    std::uint64_t bits() { return engine_(); }
    Engine& engine() { return engine_; }

private:
    Engine engine_;
    boost::random::normal_distribution<double> normal_;
    boost::random::exponential_distribution<double> exponential_;
};

/// Per-link fading variances (total, both real dimensions).
struct LinkVarianceMap {
    std::vector<std::vector<double>> source_relay; // [t][q]
    std::vector<double> source_dest;               // [t]
    std::vector<double> relay_dest;                // [q]

    LinkVarianceMap() = default;
    LinkVarianceMap(std::vector<std::vector<double>> sr, std::vector<double> sd, std::vector<double> rd);

    static LinkVarianceMap iid(std::size_t n_sources, std::size_t n_relays, double sigma2);

    std::size_t n_sources() const { return source_dest.size(); }
    std::size_t n_relays() const { return relay_dest.size(); }

    /// Throws InvalidArgument unless every entry is finite and > 0.
    void validate() const;

    /// Keeps relays [first, n_relays).
    LinkVarianceMap drop_leading_relays(std::size_t count) const;
};

/// Transmit energy multipliers: E_X = chi_X * Em.
struct EnergyPolicy {
    std::vector<double> chi_source;
    std::vector<double> chi_relay;

    /// chi = 1 for sources and PC relays, 1/2 for FC relays.
    static EnergyPolicy uniform(const NetworkCode& code);

    void validate() const;
    EnergyPolicy drop_leading_relays(std::size_t count) const;
};

struct FrameFading {
    std::vector<std::vector<cplx>> h_source_relay; // [t][q]
    std::vector<cplx> h_source_dest;
    std::vector<cplx> h_relay_dest;

    // instantaneous SNRs, N0 = 1
    double gamma_source_relay(std::size_t t, std::size_t q, const EnergyPolicy& p, double em) const {
        return std::norm(h_source_relay[t][q]) * p.chi_source[t] * em;
    }
    double gamma_source_dest(std::size_t t, const EnergyPolicy& p, double em) const {
        return std::norm(h_source_dest[t]) * p.chi_source[t] * em;
    }
    double gamma_relay_dest(std::size_t q, const EnergyPolicy& p, double em) const {
        return std::norm(h_relay_dest[q]) * p.chi_relay[q] * em;
    }
};

/// CN(0, sigma2): two real Gaussians of variance sigma2/2.
inline cplx draw_gain(double sigma2, Rng& rng) {
    const double s = std::sqrt(sigma2 / 2.0);
    const double re = rng.normal();
    return {s * re, s * rng.normal()};
}

FrameFading draw_fading(const LinkVarianceMap& var, Rng& rng);
void draw_fading_into(const LinkVarianceMap& var, Rng& rng, FrameFading& out);

enum class LinkKind { SourceRelay, SourceDest, RelayDest };

struct Link {
    LinkKind kind;
    std::size_t source = 0;
    std::size_t relay = 0;
};

/// gamma_bar = chi * sigma2 * Em/N0, with the transmitter's chi.
double mean_snr(const Link& link, const LinkVarianceMap& var, const EnergyPolicy& policy, double em_over_n0);

double db_to_linear(double db);

} // namespace ncoop
