#include "ncoop/montecarlo.hpp"

#include "ncoop/errors.hpp"
#include "ncoop/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace ncoop {

namespace {

struct ChunkResult {
    std::uint64_t frames = 0;
    std::vector<std::uint64_t> errors;
};

// Decision-statistic kernel. With N0 = 1 and gamma = |h|^2 E, the matched
// filter output is Re{h* y} / |h| = sqrt(gamma) x + n, n ~ N(0, 1/2).
class FastKernel {
public:
    FastKernel(const Scenario& sc, double em, DetectorKind kind)
        : sc_(sc), kind_(kind), ns_(sc.code.n_sources()), nr_(sc.code.n_relays()) {
        for (std::size_t t = 0; t < ns_; ++t) es_.push_back(sc.policy.chi_source[t] * em);
        for (std::size_t q = 0; q < nr_; ++q) er_.push_back(sc.policy.chi_relay[q] * em);
        x_.resize(ns_);
        gammas_.resize(ns_);
        costs_.resize(ns_ + nr_);
    }

    // Returns the detected hypothesis index; info receives the true info bits.
    std::uint64_t frame(const NetworkCode& code, const Detector& det, Rng& rng, std::uint64_t& info) {
        const std::size_t k = code.n_info();
        info = rng.bits() >> (64 - k);
        for (std::size_t t = 0; t < ns_; ++t) x_[t] = ((info >> (k - 1 - t)) & 1U) ? -1.0 : 1.0;

        for (std::size_t q = 0; q < nr_; ++q) {
            unsigned nc = code.is_partial(q) ? static_cast<unsigned>((info >> (k - 1 - ns_ - q)) & 1U) : 0U;
            double geq = std::numeric_limits<double>::infinity();
            for (std::size_t t = 0; t < ns_; ++t) {
                if (!code.codes(q, t)) {
                    gammas_[t] = 0.0;
                    continue;
                }
                const double g = sc_.variances.source_relay[t][q] * rng.exponential() * es_[t];
                const double z = std::sqrt(g) * x_[t] + kHalf * rng.normal();
                nc ^= z < 0.0 ? 1U : 0U;
                gammas_[t] = g;
                geq = std::min(geq, g);
            }
            const double grd = sc_.variances.relay_dest[q] * rng.exponential() * er_[q];
            const double sq = std::sqrt(grd);
            const double r = sq * (sq * (nc ? -1.0 : 1.0) + kHalf * rng.normal());
            if (kind_ == DetectorKind::Cmrc)
                costs_[ns_ + q] = cmrc_lambda(geq, grd) * 4.0 * r;
            else
                costs_[ns_ + q] = ml_relay_cost(nc_bit_error_prob(gammas_, code.relay(q).g), r);
        }
        for (std::size_t t = 0; t < ns_; ++t) {
            const double g = sc_.variances.source_dest[t] * rng.exponential() * es_[t];
            const double sq = std::sqrt(g);
            costs_[t] = 4.0 * sq * (sq * x_[t] + kHalf * rng.normal());
        }
        return det.best_index(costs_);
    }

private:
    static constexpr double kHalf = 0.70710678118654752440; // sqrt(1/2)

    const Scenario& sc_;
    DetectorKind kind_;
    std::size_t ns_, nr_;
    std::vector<double> es_, er_, x_, gammas_, costs_;
};

ChunkResult run_chunk(const Scenario& sc, double em, DetectorKind kind, bool full, std::uint64_t seed,
                      std::uint64_t chunk, std::uint64_t frames) {
    Rng rng = Rng::stream(seed, chunk);
    NetworkCode code = sc.code;
    Detector det(code, kind);
    FastKernel kernel(sc, em, kind);
    FrameRealization fr;
    const std::size_t k = code.n_info();
    ChunkResult res{frames, std::vector<std::uint64_t>(k, 0)};
    for (std::uint64_t f = 0; f < frames; ++f) {
        if (sc.random_nc) {
            randomize_code(code, rng.engine());
            det.set_code(code);
        }
        std::uint64_t truth = 0, idx = 0;
        if (full) {
            simulate_frame_into(sc, code, em, rng, fr);
            idx = det.detect_index(fr.obs, fr.fading, sc.policy, em);
            const Bits info = fr.info();
            for (std::size_t j = 0; j < k; ++j) truth |= std::uint64_t{info[j]} << (k - 1 - j);
        } else {
            idx = kernel.frame(code, det, rng, truth);
        }
        const std::uint64_t diff = idx ^ truth;
        for (std::size_t j = 0; j < k; ++j) res.errors[j] += (diff >> (k - 1 - j)) & 1U;
    }
    return res;
}

} // namespace

WilsonInterval wilson95(std::uint64_t errors, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double denom = 1.0 + z * z / n;
    const double centre = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    return {errors == 0 ? 0.0 : std::max(0.0, centre - half), errors == trials ? 1.0 : std::min(1.0, centre + half)};
}

void StopRule::validate() const {
    if (target_errors < 1 || max_frames < 1) throw InvalidArgument("stop rule values must be >= 1");
}

std::vector<BerEstimate> run_ber(const Scenario& sc, double snr_db, DetectorKind detector, const StopRule& stop,
                                 std::uint64_t seed, const McOptions& opt) {
    sc.validate();
    stop.validate();
    if (!sc.random_nc) sc.code.validate();
    if (opt.chunk_frames == 0) throw InvalidArgument("chunk size must be >= 1");
    const double em = db_to_linear(snr_db);
    const std::size_t k = sc.code.n_info();
    unsigned threads = opt.threads ? opt.threads : std::max(1U, std::thread::hardware_concurrency());

    std::vector<std::uint64_t> errors(k, 0);
    std::uint64_t frames = 0;
    std::uint64_t next_chunk = 0;
    bool done = false;
    std::uint64_t last_report = 0;

    auto satisfied = [&] {
        return std::all_of(errors.begin(), errors.end(), [&](std::uint64_t e) { return e >= stop.target_errors; });
    };

    while (!done) {
        // one wave: up to `threads` consecutive chunks
        std::vector<std::uint64_t> sizes;
        for (unsigned w = 0; w < threads; ++w) {
            const std::uint64_t start = (next_chunk + w) * opt.chunk_frames;
            if (start >= stop.max_frames) break;
            sizes.push_back(std::min(opt.chunk_frames, stop.max_frames - start));
        }
        std::vector<ChunkResult> results(sizes.size());
        if (sizes.size() == 1) {
            results[0] = run_chunk(sc, em, detector, opt.full_frames, seed, next_chunk, sizes[0]);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < sizes.size(); ++w)
                pool.emplace_back([&, w] { results[w] = run_chunk(sc, em, detector, opt.full_frames, seed, next_chunk + w, sizes[w]); });
            for (auto& t : pool) t.join();
        }
        // ordered scan; chunks past the stopping one are discarded
        for (const auto& r : results) {
            frames += r.frames;
            for (std::size_t j = 0; j < k; ++j) errors[j] += r.errors[j];
            if (satisfied() || frames >= stop.max_frames) {
                done = true;
                break;
            }
        }
        next_chunk += sizes.size();
        if (opt.progress && (done || frames - last_report >= (std::uint64_t{1} << 24))) {
            last_report = frames;
            *opt.progress << "  " << snr_db << " dB: " << frames << " frames, errors";
            for (auto e : errors) *opt.progress << ' ' << e;
            *opt.progress << '\n';
        }
    }

    std::vector<BerEstimate> out;
    for (std::size_t j = 0; j < k; ++j) {
        BerEstimate b;
        b.node = j;
        b.errors = errors[j];
        b.trials = frames;
        b.ber = static_cast<double>(errors[j]) / static_cast<double>(frames);
        b.ci95 = wilson95(errors[j], frames);
        b.budget_exhausted = errors[j] < stop.target_errors;
        out.push_back(b);
    }
    return out;
}

std::vector<McPoint> run_sweep(const Scenario& sc, const std::vector<double>& grid, DetectorKind detector,
                               const StopRule& stop, std::uint64_t seed, const McOptions& opt) {
    if (grid.empty()) throw InvalidArgument("SNR grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw InvalidArgument("SNR grid must be strictly ascending");
    std::vector<McPoint> out;
    for (std::size_t i = 0; i < grid.size(); ++i)
        out.push_back({grid[i], run_ber(sc, grid[i], detector, stop, seed + i, opt)});
    return out;
}

} // namespace ncoop
