#include "ncoop/analysis.hpp"

#include "ncoop/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

namespace ncoop {

namespace {

using C = std::complex<double>;

constexpr std::size_t kMaxMaskRelays = 20;

// 1 / gamma_bar_eq of relay q, i.e. sum_t g_t / (chi_t sigma2_t Em); 0 when q codes nothing.
double inv_gamma_eq(const Scenario& sc, std::size_t q, double em) {
    double acc = 0.0;
    for (std::size_t t = 0; t < sc.code.n_sources(); ++t)
        if (sc.code.codes(q, t)) acc += 1.0 / (sc.policy.chi_source[t] * sc.variances.source_relay[t][q]);
    return acc / em;
}

double gamma_sd(const Scenario& sc, std::size_t t, double em) {
    return sc.policy.chi_source[t] * sc.variances.source_dest[t] * em;
}

double gamma_rd(const Scenario& sc, std::size_t q, double em) {
    return sc.policy.chi_relay[q] * sc.variances.relay_dest[q] * em;
}

void check_codeword(const Codeword& c, const Scenario& sc) {
    if (c.bits.size() != sc.code.length() || c.n_sources != sc.code.n_sources())
        throw LengthMismatch("codeword does not match the network");
    if (sc.code.n_relays() > kMaxMaskRelays) throw TooLarge("too many relays for mask enumeration");
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

} // namespace

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double sigma_eq2(const Scenario& sc, std::size_t q) {
    const double inv = inv_gamma_eq(sc, q, 1.0);
    if (inv == 0.0) throw InvalidArgument("relay R" + std::to_string(q + 1) + " codes no source");
    return 1.0 / inv;
}

WeightProfile weight_profile(const Codeword& c, DemodEventMask mask) {
    WeightProfile w;
    w.systematic = c.systematic_weight();
    for (std::size_t q = 0; q < c.bits.size() - c.n_sources; ++q) {
        const bool one = c.bits[c.n_sources + q] != 0;
        const bool nok = (mask >> q) & 1U;
        w.parity += one;
        if (nok) {
            ++w.nok_count;
            (one ? w.parity_nok : w.nok_complement) += 1;
        } else {
            w.parity_ok += one;
        }
    }
    return w;
}

double delta_for(DemodEventMask mask, const Codeword& c) {
    if (mask == 0) return 0.5;
    for (std::size_t q = 0; q < c.bits.size() - c.n_sources; ++q)
        if (((mask >> q) & 1U) && c.bits[c.n_sources + q]) return 0.125;
    return 0.5;
}

C relay_integral(C s, int mu) {
    if (mu == 0) return (1.0 - 1.0 / std::sqrt(1.0 + 4.0 * s)) / (2.0 * s);
    return -(1.0 - 1.0 / std::sqrt(1.0 - 4.0 * s)) / (2.0 * s);
}

C mgf_bar(C s, const Codeword& c, DemodEventMask mask, const Scenario& sc, double em) {
    check_codeword(c, sc);
    const std::size_t ns = sc.code.n_sources();
    C v = 1.0;
    for (std::size_t t = 0; t < ns; ++t)
        if (c.bits[t]) v /= 4.0 * gamma_sd(sc, t, em) * s * (1.0 - s);
    for (std::size_t q = 0; q < sc.code.n_relays(); ++q) {
        const bool d = c.bits[ns + q] != 0;
        const double ieq = inv_gamma_eq(sc, q, em);
        if ((mask >> q) & 1U) {
            v *= ieq / 4.0;
            if (d) {
                if (s.real() >= 0.25) throw DomainError("Re(s) must stay below 1/4 for an erring relay factor");
                v *= relay_integral(s, 1);
            }
        } else if (d) {
            if (s.real() <= -0.25) throw DomainError("Re(s) must stay above -1/4 for a correct relay factor");
            v *= ieq / (4.0 * s) + 1.0 / (4.0 * gamma_rd(sc, q, em) * s * (1.0 - s)) - ieq / 4.0 * relay_integral(s, 0);
        }
    }
    return v;
}

double bromwich_quadrature(const std::function<C(C)>& f, double delta, double tol) {
    auto rule = [&](std::size_t nu) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= nu / 2; ++k) {
            const double tau = std::tan((2.0 * static_cast<double>(k) - 1.0) * std::numbers::pi / (2.0 * static_cast<double>(nu)));
            const C v = f(C(delta, delta * tau));
            acc += v.real() + tau * v.imag();
        }
        return acc / static_cast<double>(nu);
    };
    double prev = rule(32);
    for (std::size_t nu = 64; nu <= (std::size_t{1} << 14); nu *= 2) {
        const double cur = rule(nu);
        if (std::abs(cur - prev) <= tol * std::abs(cur) || (cur == 0.0 && prev == 0.0)) return cur;
        prev = cur;
    }
    throw NonConvergence("Gauss-Chebyshev quadrature did not converge within 2^14 nodes");
}

double apep_term(const Codeword& c, DemodEventMask mask, const Scenario& sc, double em) {
    check_codeword(c, sc);
    const std::size_t ns = sc.code.n_sources();
    // an erring relay that codes no source has probability zero
    for (std::size_t q = 0; q < sc.code.n_relays(); ++q)
        if (((mask >> q) & 1U) && inv_gamma_eq(sc, q, em) == 0.0) return 0.0;
    // constant integrand: no pole right of the contour
    if (c.weight() == 0) return 0.0;

    // A lone relay factor decays too slowly for the quadrature rule; its
    // inversion is known: the I(s;1) integral is 1, and in the correct-relay
    // bracket only the 1/(s(1-s)) part has a pole right of the contour.
    if (c.weight() == 1 && c.systematic_weight() == 0) {
        double k = 1.0;
        std::size_t one = 0;
        for (std::size_t q = 0; q < sc.code.n_relays(); ++q) {
            if (c.bits[ns + q]) one = q;
            else if ((mask >> q) & 1U) k *= inv_gamma_eq(sc, q, em) / 4.0;
        }
        if ((mask >> one) & 1U) return k * inv_gamma_eq(sc, one, em) / 4.0;
        return k / (4.0 * gamma_rd(sc, one, em));
    }
    const double delta = delta_for(mask, c);
    if (delta >= 0.25)
        for (std::size_t q = 0; q < sc.code.n_relays(); ++q)
            if (((mask >> q) & 1U) && c.bits[ns + q]) throw DomainError("contour crosses the s = 1/4 branch point");
    return bromwich_quadrature([&](C s) { return mgf_bar(s, c, mask, sc, em); }, delta);
}

double apep(const Codeword& c, const Scenario& sc, double em) {
    check_codeword(c, sc);
    if (c.weight() == 0) throw InvalidArgument("APEP needs a nonzero target codeword");
    double acc = 0.0;
    const DemodEventMask n_masks = DemodEventMask{1} << sc.code.n_relays();
    for (DemodEventMask m = 0; m < n_masks; ++m) acc += apep_term(c, m, sc, em);
    return clamp01(acc);
}

double abep_union(std::size_t node, const Scenario& sc, double em) {
    if (node >= sc.code.n_info()) throw InvalidArgument("node is neither a source nor a partial-cooperative relay");
    sc.code.validate();
    double acc = 0.0;
    for (auto m : codebook_masks(sc.code))
        if ((m >> node) & 1U) acc += apep(codeword_from_mask(m, sc.code.length(), sc.code.n_sources()), sc, em);
    return clamp01(acc);
}

double abep_sv(std::size_t node, const Scenario& sc, double em, SvNetwork net) {
    if (node >= sc.code.n_info()) throw InvalidArgument("node is neither a source nor a partial-cooperative relay");
    const bool reduce = node < sc.code.n_sources() && net == SvNetwork::FcOnly;
    const Scenario sub = reduce ? sc.fc_subnetwork() : sc;
    const auto sv = static_cast<int>(separation_vector(sub.code, node));
    double acc = 0.0;
    for (auto m : codebook_masks(sub.code))
        if (((m >> node) & 1U) && std::popcount(m) == sv)
            acc += apep(codeword_from_mask(m, sub.code.length(), sub.code.n_sources()), sub, em);
    return clamp01(acc);
}

PcRelayAbep abep_pc_relay(std::size_t node, const Scenario& sc, double em) {
    const std::size_t ns = sc.code.n_sources();
    if (node < ns || node >= sc.code.n_info())
        throw NotPartialCooperative("node " + std::to_string(node) + " is not a partial-cooperative relay");
    const std::size_t q = node - ns;
    const std::size_t k = sc.code.n_info();

    const double ieq = inv_gamma_eq(sc, q, em);
    PcRelayAbep r;
    r.lower = 1.0 / (4.0 * gamma_rd(sc, q, em)) + ieq / 4.0;
    r.upper = r.lower;
    r.estimate = r.lower;

    // xi_t: the unit-weight codeword on source t exists with relay q's buffer bit set
    const auto book = codebook_masks(sc.code);
    for (std::size_t t = 0; t < ns; ++t) {
        const double term = 1.0 / (4.0 * gamma_sd(sc, t, em));
        r.upper += term;
        for (std::uint64_t i = 0; i < book.size(); ++i)
            if (book[i] == (std::uint64_t{1} << t) && ((i >> (k - 1 - node)) & 1U)) {
                r.estimate += term;
                break;
            }
    }
    return r;
}

double abep_single_relay_closed(const Scenario& sc, std::size_t t, double em) {
    const auto& code = sc.code;
    const std::size_t ns = code.n_sources();
    bool ok = code.n_relays() == 1 && code.n_fc() == 1;
    for (std::size_t s = 0; ok && s < ns; ++s) ok = code.codes(0, s);
    if (!ok) throw TopologyMismatch("closed form needs exactly one full-cooperative relay coding every source");
    if (t >= ns) throw InvalidArgument("t must index a source");

    double direct = 1.0 / gamma_rd(sc, 0, em);
    for (std::size_t tau = 0; tau < ns; ++tau)
        if (tau != t) direct += 1.0 / gamma_sd(sc, tau, em);
    const double relay = inv_gamma_eq(sc, 0, em);
    const double c2 = (45.0 + std::sqrt(5.0)) / 160.0;
    // 3/16: residue of the pure weight-2 terms (see README)
    return clamp01((3.0 / 16.0 * direct + c2 * relay) / gamma_sd(sc, t, em));
}

double abep_random_nc(std::size_t n_fc, double chi, double sigma2, double em) {
    return clamp01(std::ldexp(1.0, -static_cast<int>(n_fc)) / (4.0 * chi * sigma2 * em));
}

double abep_random_nc(const Scenario& sc, double em, std::size_t t) {
    if (t >= sc.code.n_sources()) throw InvalidArgument("t must index a source");
    if (sc.code.n_pc() != 0) throw TopologyMismatch("random NC uses full-cooperative relays only");
    return abep_random_nc(sc.code.n_fc(), sc.policy.chi_source[t], sc.variances.source_dest[t], em);
}

std::vector<BoundErrorPoint> bound_error_stats(std::size_t n_sources, const std::vector<double>& variances,
                                               const std::vector<double>& snr_grid_db, std::size_t n_samples,
                                               std::uint64_t seed) {
    if (n_sources == 0 || variances.size() != n_sources) throw InvalidArgument("one variance per source expected");
    if (n_samples < 2) throw InvalidArgument("need at least two samples");
    std::vector<BoundErrorPoint> out;
    std::vector<double> g(n_sources);
    for (std::size_t p = 0; p < snr_grid_db.size(); ++p) {
        const double em = db_to_linear(snr_grid_db[p]);
        Rng rng = Rng::stream(seed, p);
        double mean = 0.0, m2 = 0.0;
        for (std::size_t i = 0; i < n_samples; ++i) {
            double sum = 0.0, gmin = std::numeric_limits<double>::infinity();
            for (std::size_t t = 0; t < n_sources; ++t) {
                g[t] = std::norm(draw_gain(variances[t], rng)) * em;
                sum += q_function(std::sqrt(2.0 * g[t]));
                gmin = std::min(gmin, g[t]);
            }
            const double e = n_sources == 1 ? 0.0 : sum - q_function(std::sqrt(2.0 * gmin));
            const double d = e - mean;
            mean += d / static_cast<double>(i + 1);
            m2 += d * (e - mean);
        }
        out.push_back({snr_grid_db[p], mean, std::sqrt(m2 / static_cast<double>(n_samples - 1))});
    }
    return out;
}

} // namespace ncoop
