#pragma once

#include "ncoop/channel.hpp"
#include "ncoop/scenario.hpp"

#include <vector>

namespace ncoop {

struct Observations {
    std::vector<cplx> y_source_dest;
    std::vector<cplx> y_relay_dest;
};

/// One cooperation phase.
struct FrameRealization {
    Bits source_bits;
    Bits pc_buffer_bits;             // one per PC relay
    std::vector<Bits> relay_estimates; // [t][q]; 0 where relay q does not code source t
    Bits relay_nc_bits;
    Observations obs;
    FrameFading fading;

    /// Source bits followed by PC buffer bits.
    Bits info() const;
};

struct FrameOptions {
    double noise_scale = 1.0; // 0 gives the error-free limit
};

/// ML demodulation of one BPSK symbol: sign of Re{h* y}; a tie gives 0.
inline std::uint8_t relay_demodulate(cplx y, cplx h, double /*energy*/) {
    return (h.real() * y.real() + h.imag() * y.imag()) < 0.0 ? 1 : 0;
}

/// Draws info bits (uniform) and simulates the frame.
void simulate_frame_into(const Scenario& sc, const NetworkCode& code, double em_over_n0, Rng& rng,
                         FrameRealization& out, const FrameOptions& opt = {});

/// Same, with given info bits (sources then PC buffers).
void simulate_frame_into(const Scenario& sc, const NetworkCode& code, double em_over_n0, Rng& rng,
                         const Bits& info, FrameRealization& out, const FrameOptions& opt = {});

FrameRealization simulate_frame(const Scenario& sc, double em_over_n0, Rng& rng, const FrameOptions& opt = {});

/// Probability that the relay's NC bit is wrong given per-source SNRs.
double nc_bit_error_prob(const std::vector<double>& gammas, const EncodingVector& mask);

} // namespace ncoop
