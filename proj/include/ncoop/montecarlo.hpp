#pragma once

#include "ncoop/demod.hpp"
#include "ncoop/scenario.hpp"

#include <cstdint>
#include <ostream>
#include <vector>

namespace ncoop {

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

/// 95% Wilson score interval.
WilsonInterval wilson95(std::uint64_t errors, std::uint64_t trials);

struct BerEstimate {
    std::size_t node = 0;
    std::uint64_t errors = 0;
    std::uint64_t trials = 0;
    double ber = 0.0;
    WilsonInterval ci95;
    bool budget_exhausted = false; // max_frames reached before target_errors
};

struct StopRule {
    std::uint64_t target_errors = 200;
    std::uint64_t max_frames = 100'000'000;

    void validate() const;
};

struct McOptions {
    unsigned threads = 0;               // 0: hardware concurrency
    std::uint64_t chunk_frames = 16384; // part of the reproducibility contract
    std::ostream* progress = nullptr;
    // Simulate complete complex frames through the protocol module instead of
    // the default kernel, which draws only |h|^2 and the noise component
    // along h (the decision statistics). Both have the same distribution.
    bool full_frames = false;
};

/// Per-node BER of sources and PC relays at one Em/N0 (dB).
/// Frames are split into fixed chunks, each with its own RNG stream derived
/// from (seed, chunk index); chunks are scanned in index order and the run
/// stops at the first chunk after which every node meets the stop rule, so
/// results do not depend on the thread count.
std::vector<BerEstimate> run_ber(const Scenario& sc, double snr_db, DetectorKind detector, const StopRule& stop,
                                 std::uint64_t seed, const McOptions& opt = {});

struct McPoint {
    double snr_db = 0.0;
    std::vector<BerEstimate> nodes;
};

/// Point k of the grid runs with seed + k (chunk streams are hashed, so
/// neighbouring seeds are independent).
std::vector<McPoint> run_sweep(const Scenario& sc, const std::vector<double>& snr_grid_db, DetectorKind detector,
                               const StopRule& stop, std::uint64_t seed, const McOptions& opt = {});

} // namespace ncoop
