#include "ncoop/cli.hpp"

#include "ncoop/analysis.hpp"
#include "ncoop/errors.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ncoop {

namespace {

constexpr double kHighSnrDb = 20.0;
constexpr const char* kHeader = "snr_db,node,method,value,ci_low,ci_high\n";

class NullBuf : public std::streambuf {
protected:
    int overflow(int c) override { return c; }
};

struct Csv {
    std::ostringstream body;

    void analytic(double snr, const std::string& node, const std::string& method, double v) {
        body << format_number(snr) << ',' << node << ',' << method << ',' << format_number(v) << ",,\n";
    }
    void mc(double snr, const std::string& node, const std::string& method, const BerEstimate& b) {
        body << format_number(snr) << ',' << node << ',' << method << ',' << format_number(b.ber) << ','
             << format_number(b.ci95.low) << ',' << format_number(b.ci95.high) << '\n';
    }
};

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << text;
}

void print_report(const ScenarioConfig& cfg, const Scenario& sc, std::ostream& os, const std::filesystem::path& out) {
    const NetworkCode& code = sc.code;
    os << "scenario: " << (cfg.name.empty() ? "(unnamed)" : cfg.name) << '\n';
    os << "sources: " << code.n_sources() << ", relays: " << code.n_relays() << " (" << code.n_pc() << " partial, "
       << code.n_fc() << " full)\n";
    os << "detector: " << (cfg.detector == DetectorKind::Ml ? "ml" : "cmrc") << ", modes:";
    for (Mode m : cfg.modes) os << ' ' << mode_name(m);
    os << '\n';

    if (cfg.random_nc()) {
        os << "encoding vectors: i.i.d. equiprobable, redrawn every frame (no fixed G, H or SV)\n";
        return;
    }

    std::string cols;
    for (std::size_t i = 0; i < code.length(); ++i) cols += ' ' + node_label(code, i);
    const GeneratorMatrix g = build_generator(code);
    const ParityCheckMatrix h = build_parity_check(code);
    os << "G (columns:" << cols << ")\n" << g.dump();
    os << "H (columns:" << cols << ")\n" << (h.rows ? h.dump() : std::string("(empty: no full-cooperative relay)\n"));
    write_file(out / "code.txt", "G\n" + g.dump() + "H\n" + h.dump());

    os << "node  SV  diversity\n";
    const auto sv = separation_vectors(code);
    for (std::size_t n = 0; n < sv.size(); ++n)
        os << std::left << std::setw(6) << node_label(code, n) << std::setw(4) << sv[n] << sv[n] << '\n';
    os << std::right;

    bool analytic = false;
    for (Mode m : cfg.modes) analytic = analytic || m != Mode::Mc;
    if (analytic && cfg.grid.start_db < kHighSnrDb)
        os << "note: analytic rows below " << kHighSnrDb
           << " dB use the high-SNR approximation outside its regime; treat them as extrapolation\n";
}

// sources and PC relays
std::vector<std::size_t> info_nodes(const NetworkCode& code) {
    std::vector<std::size_t> v(code.n_info());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

bool single_relay_topology(const NetworkCode& code) {
    if (code.n_relays() != 1 || code.n_pc() != 0) return false;
    for (std::size_t t = 0; t < code.n_sources(); ++t)
        if (!code.codes(0, t)) return false;
    return true;
}

} // namespace

std::string format_number(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 8);
    return std::string(buf, r.ptr);
}

int run(const ScenarioConfig& cfg, const RunOptions& opt) {
    NullBuf nullbuf;
    std::ostream null(&nullbuf);
    std::ostream& os = opt.report ? *opt.report : null;

    Scenario sc;
    std::vector<double> grid;
    try {
        cfg.validate();
        sc = cfg.scenario();
        if (!sc.random_nc) sc.code.validate();
        grid = cfg.grid.points();
    } catch (const Error& e) {
        os << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    const std::filesystem::path out(opt.out_dir);
    std::filesystem::create_directories(out);
    print_report(cfg, sc, os, out);

    int status = kExitOk;
    auto raise = [&](int code) {
        // numerical failure outranks budget exhaustion
        if (code == kExitNumerical || status == kExitOk) status = code;
    };
    const NetworkCode& code = sc.code;

    for (Mode mode : cfg.modes) {
        Csv csv;
        try {
            switch (mode) {
            case Mode::Mc: {
                if (cfg.bound_error) {
                    std::ostringstream be;
                    be << "snr_db,n_sources,mean,stddev\n";
                    for (std::size_t ns : cfg.bound_error->n_sources) {
                        const auto pts = bound_error_stats(ns, std::vector<double>(ns, cfg.iid_variance), grid,
                                                           cfg.bound_error->samples, cfg.seed);
                        for (const auto& p : pts)
                            be << format_number(p.snr_db) << ',' << ns << ',' << format_number(p.mean) << ','
                               << format_number(p.stddev) << '\n';
                    }
                    write_file(out / "bound_error.csv", be.str());
                    os << "wrote " << (out / "bound_error.csv").string() << '\n';
                    continue;
                }
                McOptions mo;
                mo.threads = opt.threads;
                mo.progress = opt.progress;
                const std::string method = cfg.detector == DetectorKind::Ml ? "mc_ml" : "mc_cmrc";
                std::ostringstream counts;
                counts << "snr_db,node,errors,frames,budget_exhausted\n";
                bool exhausted = false;
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    const auto est = run_ber(sc, grid[i], cfg.detector, cfg.stop, cfg.seed + i, mo);
                    for (const auto& b : est) {
                        const std::string node = node_label(code, b.node);
                        csv.mc(grid[i], node, method, b);
                        counts << format_number(grid[i]) << ',' << node << ',' << b.errors << ',' << b.trials << ','
                               << (b.budget_exhausted ? 1 : 0) << '\n';
                        if (b.budget_exhausted) {
                            exhausted = true;
                            os << "budget exhausted: " << node << " at " << grid[i] << " dB (" << b.errors
                               << " errors in " << b.trials << " frames)\n";
                        }
                    }
                }
                write_file(out / "mc_counts.csv", counts.str());
                if (exhausted) raise(kExitBudget);
                break;
            }
            case Mode::Ub:
            case Mode::Sv:
                for (double snr : grid) {
                    const double em = db_to_linear(snr);
                    for (std::size_t n : info_nodes(code)) {
                        const double v = mode == Mode::Ub ? abep_union(n, sc, em) : abep_sv(n, sc, em);
                        csv.analytic(snr, node_label(code, n), mode_name(mode), v);
                    }
                }
                break;
            case Mode::Closed:
                for (double snr : grid) {
                    const double em = db_to_linear(snr);
                    if (single_relay_topology(code))
                        for (std::size_t t = 0; t < code.n_sources(); ++t)
                            csv.analytic(snr, node_label(code, t), "closed", abep_single_relay_closed(sc, t, em));
                    for (std::size_t q = 0; q < code.n_pc(); ++q) {
                        const std::size_t n = code.n_sources() + q;
                        const PcRelayAbep b = abep_pc_relay(n, sc, em);
                        csv.analytic(snr, node_label(code, n), "pc_lower", b.lower);
                        csv.analytic(snr, node_label(code, n), "pc_upper", b.upper);
                        csv.analytic(snr, node_label(code, n), "pc_estimate", b.estimate);
                    }
                }
                break;
            case Mode::Random:
                for (double snr : grid) {
                    const double em = db_to_linear(snr);
                    for (std::size_t t = 0; t < code.n_sources(); ++t)
                        csv.analytic(snr, node_label(code, t), "random", abep_random_nc(sc, em, t));
                }
                break;
            }
        } catch (const NonConvergence& e) {
            os << mode_name(mode) << ": numerical failure: " << e.what() << " (partial results written)\n";
            raise(kExitNumerical);
        } catch (const DomainError& e) {
            os << mode_name(mode) << ": numerical failure: " << e.what() << " (partial results written)\n";
            raise(kExitNumerical);
        }
        const auto path = out / (std::string(mode_name(mode)) + ".csv");
        write_file(path, kHeader + csv.body.str());
        os << "wrote " << path.string() << '\n';
    }
    return status;
}

} // namespace ncoop
