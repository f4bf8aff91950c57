#pragma once

#include "ncoop/protocol.hpp"

#include <cstdint>
#include <vector>

namespace ncoop {

enum class DetectorKind { Ml, Cmrc };

struct HypothesisVector {
    Bits source_bits;
    Bits pc_bits;

    Bits info() const;
    /// NC bits implied by the code, recomputed on each call.
    Bits nc_bits(const NetworkCode& code) const;
};

/// Hypothesis index i <-> info vector with info[0] as the most significant bit.
HypothesisVector hypothesis_from_index(std::uint64_t index, const NetworkCode& code);

struct CmrcWeights {
    std::vector<double> gamma_eq; // +inf for a relay that codes no source
    std::vector<double> lambda;
};

CmrcWeights cmrc_weights(const FrameFading& fading, const NetworkCode& code, const EnergyPolicy& policy,
                         double em_over_n0);

/// Sum of Euclidean distances with lambda-weighted relay branches (smaller is better).
double cmrc_metric(const HypothesisVector& hyp, const Observations& obs, const FrameFading& fading,
                   const NetworkCode& code, const EnergyPolicy& policy, double em_over_n0);

/// Log of the ML likelihood (larger is better). Relay error probabilities are
/// evaluated exactly from the source-relay SNRs.
double ml_log_metric(const HypothesisVector& hyp, const Observations& obs, const FrameFading& fading,
                     const NetworkCode& code, const EnergyPolicy& policy, double em_over_n0);

/// C-MRC branch weight min(gamma_eq, gamma_rd) / gamma_rd.
double cmrc_lambda(double gamma_eq, double gamma_rd);

/// ML cost of NC bit 1 minus bit 0 for a relay branch with error
/// probability p and matched-filter output r = sqrt(E) Re{h* y}.
double ml_relay_cost(double p, double r);

/// Exhaustive joint detector. Both metrics are affine in the per-position
/// bit choice, so each hypothesis is scored as a sum of per-position costs
/// over the ones of its codeword; ties go to the lexicographically smallest.
class Detector {
public:
    Detector(const NetworkCode& code, DetectorKind kind);

    /// Recomputes the hypothesis table (random-NC runs change the code per frame).
    void set_code(const NetworkCode& code);

    std::uint64_t detect_index(const Observations& obs, const FrameFading& fading, const EnergyPolicy& policy,
                               double em_over_n0);

    /// Index of the hypothesis minimising the summed costs over the ones of its codeword.
    std::uint64_t best_index(const std::vector<double>& costs) const;

    HypothesisVector detect(const Observations& obs, const FrameFading& fading, const EnergyPolicy& policy,
                            double em_over_n0);

    DetectorKind kind() const { return kind_; }
    const NetworkCode& code() const { return code_; }
    const std::vector<std::uint64_t>& table() const { return table_; }

    /// Per-position costs of the last detect call.
    const std::vector<double>& costs() const { return cost_; }

private:
    void fill_costs(const Observations& obs, const FrameFading& fading, const EnergyPolicy& policy, double em);

    NetworkCode code_;
    DetectorKind kind_;
    std::vector<std::uint64_t> table_;
    std::vector<double> cost_;
    std::vector<double> gammas_;
};

HypothesisVector ml_detect(const Observations& obs, const FrameFading& fading, const NetworkCode& code,
                           const EnergyPolicy& policy, double em_over_n0);

HypothesisVector cmrc_detect(const Observations& obs, const FrameFading& fading, const NetworkCode& code,
                             const EnergyPolicy& policy, double em_over_n0);

} // namespace ncoop
