#include "ncoop/demod.hpp"

#include "ncoop/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace ncoop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_sum_exp(double a, double b) {
    const double m = std::max(a, b);
    if (m == -kInf) return -kInf;
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

double re_conj_mul(cplx h, cplx y) { return h.real() * y.real() + h.imag() * y.imag(); }

double relay_error_prob(const FrameFading& f, const NetworkCode& code, const EnergyPolicy& p, double em,
                        std::size_t q, std::vector<double>& gammas) {
    const std::size_t ns = code.n_sources();
    gammas.resize(ns);
    for (std::size_t t = 0; t < ns; ++t) gammas[t] = f.gamma_source_relay(t, q, p, em);
    return nc_bit_error_prob(gammas, code.relay(q).g);
}

double relay_lambda(const FrameFading& f, const NetworkCode& code, const EnergyPolicy& p, double em, std::size_t q,
                    double* gamma_eq_out = nullptr) {
    double geq = kInf;
    for (std::size_t t = 0; t < code.n_sources(); ++t)
        if (code.codes(q, t)) geq = std::min(geq, f.gamma_source_relay(t, q, p, em));
    if (gamma_eq_out) *gamma_eq_out = geq;
    return cmrc_lambda(geq, f.gamma_relay_dest(q, p, em));
}

} // namespace

double cmrc_lambda(double gamma_eq, double gamma_rd) {
    if (!(gamma_rd > 0.0)) return 1.0;
    return std::min(gamma_eq, gamma_rd) / gamma_rd;
}

double ml_relay_cost(double p, double r) {
    const double lp = std::log(p), lq = std::log1p(-p);
    return log_sum_exp(lp - 2.0 * r, lq + 2.0 * r) - log_sum_exp(lp + 2.0 * r, lq - 2.0 * r);
}

Bits HypothesisVector::info() const {
    Bits b = source_bits;
    b.insert(b.end(), pc_bits.begin(), pc_bits.end());
    return b;
}

Bits HypothesisVector::nc_bits(const NetworkCode& code) const {
    const auto c = encode(info(), code);
    return Bits(c.bits.begin() + static_cast<std::ptrdiff_t>(code.n_sources()), c.bits.end());
}

HypothesisVector hypothesis_from_index(std::uint64_t index, const NetworkCode& code) {
    const std::size_t k = code.n_info(), ns = code.n_sources();
    HypothesisVector h;
    for (std::size_t j = 0; j < k; ++j) {
        const auto bit = static_cast<std::uint8_t>((index >> (k - 1 - j)) & 1U);
        (j < ns ? h.source_bits : h.pc_bits).push_back(bit);
    }
    return h;
}

CmrcWeights cmrc_weights(const FrameFading& fading, const NetworkCode& code, const EnergyPolicy& policy,
                         double em) {
    CmrcWeights w;
    for (std::size_t q = 0; q < code.n_relays(); ++q) {
        double geq = 0.0;
        w.lambda.push_back(relay_lambda(fading, code, policy, em, q, &geq));
        w.gamma_eq.push_back(geq);
    }
    return w;
}

double cmrc_metric(const HypothesisVector& hyp, const Observations& obs, const FrameFading& fading,
                   const NetworkCode& code, const EnergyPolicy& policy, double em) {
    const auto nc = hyp.nc_bits(code);
    double m = 0.0;
    for (std::size_t t = 0; t < code.n_sources(); ++t) {
        const double amp = std::sqrt(policy.chi_source[t] * em);
        m += std::norm(obs.y_source_dest[t] - amp * fading.h_source_dest[t] * (1.0 - 2.0 * hyp.source_bits[t]));
    }
    const auto w = cmrc_weights(fading, code, policy, em);
    for (std::size_t q = 0; q < code.n_relays(); ++q) {
        const double amp = std::sqrt(policy.chi_relay[q] * em);
        m += w.lambda[q] * std::norm(obs.y_relay_dest[q] - amp * fading.h_relay_dest[q] * (1.0 - 2.0 * nc[q]));
    }
    return m;
}

double ml_log_metric(const HypothesisVector& hyp, const Observations& obs, const FrameFading& fading,
                     const NetworkCode& code, const EnergyPolicy& policy, double em) {
    const auto nc = hyp.nc_bits(code);
    double m = 0.0;
    for (std::size_t t = 0; t < code.n_sources(); ++t) {
        const double amp = std::sqrt(policy.chi_source[t] * em);
        m -= std::norm(obs.y_source_dest[t] - amp * fading.h_source_dest[t] * (1.0 - 2.0 * hyp.source_bits[t]));
    }
    std::vector<double> gammas;
    for (std::size_t q = 0; q < code.n_relays(); ++q) {
        const double p = relay_error_prob(fading, code, policy, em, q, gammas);
        const double amp = std::sqrt(policy.chi_relay[q] * em);
        const cplx s = amp * fading.h_relay_dest[q] * (1.0 - 2.0 * nc[q]);
        const cplx y = obs.y_relay_dest[q];
        m += log_sum_exp(std::log(p) - std::norm(y + s), std::log1p(-p) - std::norm(y - s));
    }
    return m;
}

Detector::Detector(const NetworkCode& code, DetectorKind kind) : kind_(kind) { set_code(code); }

void Detector::set_code(const NetworkCode& code) {
    code_ = code;
    codebook_masks(code_, table_);
    cost_.assign(code_.length(), 0.0);
}

void Detector::fill_costs(const Observations& obs, const FrameFading& fading, const EnergyPolicy& policy,
                          double em) {
    const std::size_t ns = code_.n_sources();
    // cost of bit 1 minus cost of bit 0 at each position
    for (std::size_t t = 0; t < ns; ++t)
        cost_[t] = 4.0 * std::sqrt(policy.chi_source[t] * em) * re_conj_mul(fading.h_source_dest[t], obs.y_source_dest[t]);
    for (std::size_t q = 0; q < code_.n_relays(); ++q) {
        const double r = std::sqrt(policy.chi_relay[q] * em) * re_conj_mul(fading.h_relay_dest[q], obs.y_relay_dest[q]);
        if (kind_ == DetectorKind::Cmrc) {
            cost_[ns + q] = relay_lambda(fading, code_, policy, em, q) * 4.0 * r;
        } else {
            cost_[ns + q] = ml_relay_cost(relay_error_prob(fading, code_, policy, em, q, gammas_), r);
        }
    }
}

std::uint64_t Detector::detect_index(const Observations& obs, const FrameFading& fading, const EnergyPolicy& policy,
                                     double em) {
    fill_costs(obs, fading, policy, em);
    return best_index(cost_);
}

std::uint64_t Detector::best_index(const std::vector<double>& costs) const {
    std::uint64_t best = 0;
    double best_cost = kInf;
    for (std::uint64_t i = 0; i < table_.size(); ++i) {
        double s = 0.0;
        for (std::uint64_t m = table_[i]; m; m &= m - 1) s += costs[static_cast<std::size_t>(std::countr_zero(m))];
        if (s < best_cost) {
            best_cost = s;
            best = i;
        }
    }
    return best;
}

HypothesisVector Detector::detect(const Observations& obs, const FrameFading& fading, const EnergyPolicy& policy,
                                  double em) {
    return hypothesis_from_index(detect_index(obs, fading, policy, em), code_);
}

HypothesisVector ml_detect(const Observations& obs, const FrameFading& fading, const NetworkCode& code,
                           const EnergyPolicy& policy, double em) {
    Detector d(code, DetectorKind::Ml);
    return d.detect(obs, fading, policy, em);
}

HypothesisVector cmrc_detect(const Observations& obs, const FrameFading& fading, const NetworkCode& code,
                             const EnergyPolicy& policy, double em) {
    Detector d(code, DetectorKind::Cmrc);
    return d.detect(obs, fading, policy, em);
}

} // namespace ncoop
