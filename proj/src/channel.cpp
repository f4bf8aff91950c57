#include "ncoop/channel.hpp"

#include "ncoop/errors.hpp"

#include <cmath>
#include <string>

namespace ncoop {

namespace {

void check_positive(double v, const char* what) {
    if (!(std::isfinite(v) && v > 0.0))
        throw InvalidArgument(std::string(what) + " must be finite and > 0, got " + std::to_string(v));
}

void check_chi(double v, const char* what) {
    if (!(std::isfinite(v) && v > 0.0 && v <= 1.0))
        throw InvalidArgument(std::string(what) + " must lie in (0, 1], got " + std::to_string(v));
}

} // namespace

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    Rng r;
    r.engine_.seed(seq);
    return r;
}

LinkVarianceMap::LinkVarianceMap(std::vector<std::vector<double>> sr, std::vector<double> sd,
                                 std::vector<double> rd)
    : source_relay(std::move(sr)), source_dest(std::move(sd)), relay_dest(std::move(rd)) {
    validate();
}

LinkVarianceMap LinkVarianceMap::iid(std::size_t n_sources, std::size_t n_relays, double sigma2) {
    return LinkVarianceMap(std::vector<std::vector<double>>(n_sources, std::vector<double>(n_relays, sigma2)),
                           std::vector<double>(n_sources, sigma2), std::vector<double>(n_relays, sigma2));
}

void LinkVarianceMap::validate() const {
    if (source_relay.size() != source_dest.size())
        throw InvalidArgument("source-relay variances do not match the source count");
    for (const auto& row : source_relay) {
        if (row.size() != relay_dest.size())
            throw InvalidArgument("source-relay variances do not match the relay count");
        for (double v : row) check_positive(v, "source-relay variance");
    }
    for (double v : source_dest) check_positive(v, "source-destination variance");
    for (double v : relay_dest) check_positive(v, "relay-destination variance");
}

LinkVarianceMap LinkVarianceMap::drop_leading_relays(std::size_t count) const {
    LinkVarianceMap out = *this;
    for (auto& row : out.source_relay) row.erase(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(count));
    out.relay_dest.erase(out.relay_dest.begin(), out.relay_dest.begin() + static_cast<std::ptrdiff_t>(count));
    return out;
}

EnergyPolicy EnergyPolicy::uniform(const NetworkCode& code) {
    EnergyPolicy p;
    p.chi_source.assign(code.n_sources(), 1.0);
    for (std::size_t q = 0; q < code.n_relays(); ++q) p.chi_relay.push_back(code.is_partial(q) ? 1.0 : 0.5);
    return p;
}

void EnergyPolicy::validate() const {
    for (double v : chi_source) check_chi(v, "source energy multiplier");
    for (double v : chi_relay) check_chi(v, "relay energy multiplier");
}

EnergyPolicy EnergyPolicy::drop_leading_relays(std::size_t count) const {
    EnergyPolicy out = *this;
    out.chi_relay.erase(out.chi_relay.begin(), out.chi_relay.begin() + static_cast<std::ptrdiff_t>(count));
    return out;
}

void draw_fading_into(const LinkVarianceMap& var, Rng& rng, FrameFading& out) {
    const std::size_t ns = var.n_sources(), nr = var.n_relays();
    out.h_source_relay.resize(ns);
    out.h_source_dest.resize(ns);
    out.h_relay_dest.resize(nr);
    for (std::size_t t = 0; t < ns; ++t) {
        out.h_source_relay[t].resize(nr);
        for (std::size_t q = 0; q < nr; ++q) out.h_source_relay[t][q] = draw_gain(var.source_relay[t][q], rng);
    }
    for (std::size_t t = 0; t < ns; ++t) out.h_source_dest[t] = draw_gain(var.source_dest[t], rng);
    for (std::size_t q = 0; q < nr; ++q) out.h_relay_dest[q] = draw_gain(var.relay_dest[q], rng);
}

FrameFading draw_fading(const LinkVarianceMap& var, Rng& rng) {
    FrameFading f;
    draw_fading_into(var, rng, f);
    return f;
}

double mean_snr(const Link& link, const LinkVarianceMap& var, const EnergyPolicy& policy, double em_over_n0) {
    if (!(em_over_n0 > 0.0)) throw InvalidArgument("Em/N0 must be > 0");
    switch (link.kind) {
    case LinkKind::SourceRelay:
        return policy.chi_source.at(link.source) * var.source_relay.at(link.source).at(link.relay) * em_over_n0;
    case LinkKind::SourceDest:
        return policy.chi_source.at(link.source) * var.source_dest.at(link.source) * em_over_n0;
    case LinkKind::RelayDest:
        return policy.chi_relay.at(link.relay) * var.relay_dest.at(link.relay) * em_over_n0;
    }
    return 0.0;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

} // namespace ncoop
