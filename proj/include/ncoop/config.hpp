#pragma once

#include "ncoop/demod.hpp"
#include "ncoop/montecarlo.hpp"
#include "ncoop/scenario.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ncoop {

enum class Mode { Mc, Ub, Sv, Closed, Random };

const char* mode_name(Mode m);
Mode parse_mode(const std::string& s); // throws ValidationError
DetectorKind parse_detector(const std::string& s);

struct SnrGrid {
    double start_db = 0.0;
    double stop_db = 0.0;
    double step_db = 1.0;

    std::vector<double> points() const;
};

struct BoundErrorSpec {
    std::vector<std::size_t> n_sources;
    std::size_t samples = 1'000'000;
};

struct ScenarioConfig {
    std::string name;
    std::size_t n_sources = 0;
    std::vector<Relay> relays;
    std::size_t random_relays = 0; // > 0: random NC with this many FC relays
    double iid_variance = 1.0;
    LinkVarianceMap variances;
    EnergyPolicy policy;
    SnrGrid grid;
    DetectorKind detector = DetectorKind::Cmrc;
    std::vector<Mode> modes;
    StopRule stop;
    std::uint64_t seed = 1;
    std::optional<BoundErrorSpec> bound_error;

    bool random_nc() const { return random_relays > 0; }

    /// Scenario with a placeholder code for random NC (redrawn per frame).
    Scenario scenario() const;

    /// Re-checks mode/topology compatibility (used after CLI overrides).
    void validate() const;
};

/// Reads and validates a JSON scenario file.
ScenarioConfig parse_config(const std::string& path);

/// Same, from text; origin names the source in messages.
ScenarioConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");

} // namespace ncoop
