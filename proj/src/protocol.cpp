#include "ncoop/protocol.hpp"

#include "ncoop/analysis.hpp"
#include "ncoop/errors.hpp"

#include <cmath>

namespace ncoop {

Bits FrameRealization::info() const {
    Bits b = source_bits;
    b.insert(b.end(), pc_buffer_bits.begin(), pc_buffer_bits.end());
    return b;
}

void simulate_frame_into(const Scenario& sc, const NetworkCode& code, double em, Rng& rng,
                         FrameRealization& out, const FrameOptions& opt) {
    const std::size_t k = code.n_info();
    static thread_local Bits info;
    info.resize(k);
    std::uint64_t word = rng.bits();
    for (std::size_t i = 0; i < k; ++i) {
        if (i == 64) word = rng.bits();
        info[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1U);
    }
    simulate_frame_into(sc, code, em, rng, info, out, opt);
}

void simulate_frame_into(const Scenario& sc, const NetworkCode& code, double em, Rng& rng, const Bits& info,
                         FrameRealization& out, const FrameOptions& opt) {
    const std::size_t ns = code.n_sources(), nr = code.n_relays(), npc = code.n_pc();
    if (info.size() != code.n_info()) throw LengthMismatch("info vector length does not match the code");

    out.source_bits.assign(info.begin(), info.begin() + static_cast<std::ptrdiff_t>(ns));
    out.pc_buffer_bits.assign(info.begin() + static_cast<std::ptrdiff_t>(ns), info.end());

    draw_fading_into(sc.variances, rng, out.fading);
    const double ns_dim = opt.noise_scale * std::sqrt(0.5); // N0 = 1

    // broadcast phase: relay q demodulates the sources it codes
    out.relay_estimates.resize(ns);
    for (std::size_t t = 0; t < ns; ++t) {
        out.relay_estimates[t].assign(nr, 0);
        const double amp = std::sqrt(sc.policy.chi_source[t] * em);
        const double x = 1.0 - 2.0 * out.source_bits[t];
        for (std::size_t q = 0; q < nr; ++q) {
            if (!code.codes(q, t)) continue;
            const cplx h = out.fading.h_source_relay[t][q];
            const double nre = rng.normal();
            const cplx n{ns_dim * nre, ns_dim * rng.normal()};
            out.relay_estimates[t][q] = relay_demodulate(amp * h * x + n, h, amp * amp);
        }
    }

    out.obs.y_source_dest.resize(ns);
    for (std::size_t t = 0; t < ns; ++t) {
        const double amp = std::sqrt(sc.policy.chi_source[t] * em);
        const double nre = rng.normal();
        const cplx n{ns_dim * nre, ns_dim * rng.normal()};
        out.obs.y_source_dest[t] = amp * out.fading.h_source_dest[t] * (1.0 - 2.0 * out.source_bits[t]) + n;
    }

    // relaying phase
    out.relay_nc_bits.resize(nr);
    out.obs.y_relay_dest.resize(nr);
    for (std::size_t q = 0; q < nr; ++q) {
        std::uint8_t bit = q < npc ? out.pc_buffer_bits[q] : 0;
        for (std::size_t t = 0; t < ns; ++t)
            if (code.codes(q, t)) bit ^= out.relay_estimates[t][q];
        out.relay_nc_bits[q] = bit;
        const double amp = std::sqrt(sc.policy.chi_relay[q] * em);
        const double nre = rng.normal();
        const cplx n{ns_dim * nre, ns_dim * rng.normal()};
        out.obs.y_relay_dest[q] = amp * out.fading.h_relay_dest[q] * (1.0 - 2.0 * bit) + n;
    }
}

FrameRealization simulate_frame(const Scenario& sc, double em, Rng& rng, const FrameOptions& opt) {
    FrameRealization f;
    simulate_frame_into(sc, sc.code, em, rng, f, opt);
    return f;
}

double nc_bit_error_prob(const std::vector<double>& gammas, const EncodingVector& mask) {
    if (gammas.size() != mask.source_mask.size()) throw LengthMismatch("one SNR per source expected");
    double p = 0.0;
    // sum_t g_t Q_t prod_{r>t} (1 - 2 g_r Q_r), accumulated from the last source backwards
    double tail = 1.0;
    for (std::size_t i = gammas.size(); i-- > 0;) {
        if (!mask.source_mask[i]) continue;
        if (gammas[i] < 0.0) throw InvalidArgument("negative SNR");
        const double qt = q_function(std::sqrt(2.0 * gammas[i]));
        p += qt * tail;
        tail *= 1.0 - 2.0 * qt;
    }
    return p;
}

} // namespace ncoop
