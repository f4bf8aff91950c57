#pragma once

#include "ncoop/scenario.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace ncoop {

double q_function(double x);

/// (sum_t g_t / (chi_t sigma2_t))^-1 for relay q. Throws if q codes no source.
double sigma_eq2(const Scenario& sc, std::size_t q);

/// Relay-error event: bit q set when relay q forwarded a wrong NC bit.
using DemodEventMask = std::uint32_t;

struct WeightProfile {
    std::size_t systematic = 0;   // w_H^(S)
    std::size_t parity = 0;       // w_H^(R)
    std::size_t parity_ok = 0;    // ones on correct relays
    std::size_t parity_nok = 0;   // ones on erring relays
    std::size_t nok_complement = 0; // erring relays with a zero
    std::size_t nok_count = 0;

    /// Decay exponent of the mask's APEP term.
    std::size_t diversity() const { return systematic + parity_ok + nok_count; }
};

WeightProfile weight_profile(const Codeword& c, DemodEventMask mask);

/// Contour abscissa: 1/2 unless some erring relay has a one in c, then 1/8.
double delta_for(DemodEventMask mask, const Codeword& c);

/// I(s; mu) of the high-SNR relay factors.
std::complex<double> relay_integral(std::complex<double> s, int mu);

/// High-SNR MGF of the metric difference for 0 -> c under event mask.
std::complex<double> mgf_bar(std::complex<double> s, const Codeword& c, DemodEventMask mask, const Scenario& sc,
                             double em_over_n0);

/// (1/2 pi j) int f(s)/s ds over Re(s) = delta by Gauss-Chebyshev quadrature,
/// doubling the node count from 32 until the relative change is below tol.
double bromwich_quadrature(const std::function<std::complex<double>(std::complex<double>)>& f, double delta,
                           double tol = 1e-8);

/// APEP of 0 -> c summed over all relay-error masks.
double apep(const Codeword& c, const Scenario& sc, double em_over_n0);

/// Single mask term of apep.
double apep_term(const Codeword& c, DemodEventMask mask, const Scenario& sc, double em_over_n0);

double abep_union(std::size_t node, const Scenario& sc, double em_over_n0);

enum class SvNetwork { FcOnly, Full };

/// Union bound restricted to codewords of weight SV(node). Sources use the
/// FC-only subnetwork unless SvNetwork::Full is asked for.
double abep_sv(std::size_t node, const Scenario& sc, double em_over_n0, SvNetwork net = SvNetwork::FcOnly);

struct PcRelayAbep {
    double lower = 0.0;
    double upper = 0.0;
    double estimate = 0.0;
};

/// node is the PC relay's node id (N_S + q).
PcRelayAbep abep_pc_relay(std::size_t node, const Scenario& sc, double em_over_n0);

/// N_S sources, one FC relay coding every source. t is a source index.
double abep_single_relay_closed(const Scenario& sc, std::size_t t, double em_over_n0);

/// High-SNR ABEP of source t when the n_fc encoding vectors are random.
double abep_random_nc(std::size_t n_fc, double chi_source, double sigma2_source_dest, double em_over_n0);
double abep_random_nc(const Scenario& sc, double em_over_n0, std::size_t t);

struct BoundErrorPoint {
    double snr_db = 0.0;
    double mean = 0.0;
    double stddev = 0.0;
};

/// Statistics of sum_t Q(sqrt(2 g_t)) - Q(sqrt(2 min g_t)) with every source coded.
/// variances[t] is the source-relay fading variance of source t.
std::vector<BoundErrorPoint> bound_error_stats(std::size_t n_sources, const std::vector<double>& variances,
                                               const std::vector<double>& snr_grid_db, std::size_t n_samples,
                                               std::uint64_t seed);

} // namespace ncoop
