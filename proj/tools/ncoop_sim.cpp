// ncoop-sim: run a scenario file (Monte Carlo sweeps and analytic curves).
#include "ncoop/cli.hpp"
#include "ncoop/errors.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

// counts may be written as 1e6, like in scenario files
std::uint64_t to_count(double v, const char* flag) {
    if (!(v >= 1.0) || v > 1.8e19 || std::floor(v) != v)
        throw ncoop::ValidationError(std::string(flag) + " must be a positive integer");
    return static_cast<std::uint64_t>(v);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Network-coded cooperative relaying: BER simulation and analysis"};
    std::string config_path, modes, detector, out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<double> target_errors, max_frames;
    unsigned threads = 0;
    app.add_option("--config", config_path, "scenario file (JSON)")->required();
    app.add_option("--mode", modes, "comma-separated subset of mc,ub,sv,closed,random (overrides the file)");
    app.add_option("--detector", detector, "ml or cmrc (overrides the file)");
    app.add_option("--seed", seed, "base seed");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--target-errors", target_errors, "stop after this many errors per node");
    app.add_option("--max-frames", max_frames, "frame budget per SNR point");
    app.add_option("--threads", threads, "worker threads (0: all cores)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : ncoop::kExitConfig;
    }

    ncoop::ScenarioConfig cfg;
    try {
        cfg = ncoop::parse_config(config_path);
        if (!modes.empty()) {
            cfg.modes.clear();
            std::stringstream ss(modes);
            for (std::string m; std::getline(ss, m, ',');)
                if (!m.empty()) cfg.modes.push_back(ncoop::parse_mode(m));
        }
        if (!detector.empty()) cfg.detector = ncoop::parse_detector(detector);
        if (seed) cfg.seed = *seed;
        if (target_errors) cfg.stop.target_errors = to_count(*target_errors, "--target-errors");
        if (max_frames) cfg.stop.max_frames = to_count(*max_frames, "--max-frames");
        cfg.validate();
    } catch (const ncoop::Error& e) {
        std::cerr << "ncoop-sim: " << e.what() << '\n';
        return ncoop::kExitConfig;
    }

    ncoop::RunOptions opt;
    opt.out_dir = out_dir;
    opt.report = &std::cout;
    opt.progress = &std::cerr;
    opt.threads = threads;
    try {
        return ncoop::run(cfg, opt);
    } catch (const std::exception& e) {
        std::cerr << "ncoop-sim: " << e.what() << '\n';
        return 1;
    }
}
