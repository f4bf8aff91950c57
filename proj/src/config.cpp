#include "ncoop/config.hpp"

#include "ncoop/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ncoop {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ValidationError(path + ": " + msg);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; }))
            fail(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
    }
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
}

double positive(const json& v, const std::string& path) {
    const double d = number(v, path);
    if (!(d > 0.0)) fail(path, "must be > 0");
    return d;
}

std::uint64_t count(const json& v, const std::string& path, std::uint64_t min) {
    if (v.is_number_float()) {
        // allow 1e6-style literals when integral
        const double d = v.get<double>();
        if (!(d >= static_cast<double>(min)) || d != std::floor(d) || d > 1.8e19) fail(path, "expected an integer");
        return static_cast<std::uint64_t>(d);
    }
    if (!v.is_number_integer()) fail(path, "expected an integer");
    if (v.is_number_unsigned()) {
        auto u = v.get<std::uint64_t>();
        if (u < min) fail(path, "must be >= " + std::to_string(min));
        return u;
    }
    auto i = v.get<std::int64_t>();
    if (i < static_cast<std::int64_t>(min)) fail(path, "must be >= " + std::to_string(min));
    return static_cast<std::uint64_t>(i);
}

// scalar or array of n positive values
std::vector<double> per_link(const json& v, std::size_t n, const std::string& path) {
    if (v.is_array()) {
        if (v.size() != n) fail(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
        std::vector<double> out;
        for (std::size_t i = 0; i < n; ++i) out.push_back(positive(v[i], path + "[" + std::to_string(i) + "]"));
        return out;
    }
    return std::vector<double>(n, positive(v, path));
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace

const char* mode_name(Mode m) {
    switch (m) {
    case Mode::Mc: return "mc";
    case Mode::Ub: return "ub";
    case Mode::Sv: return "sv";
    case Mode::Closed: return "closed";
    case Mode::Random: return "random";
    }
    return "?";
}

Mode parse_mode(const std::string& s) {
    for (Mode m : {Mode::Mc, Mode::Ub, Mode::Sv, Mode::Closed, Mode::Random})
        if (s == mode_name(m)) return m;
    throw ValidationError("modes: unknown mode '" + s + "' (expected mc, ub, sv, closed or random)");
}

DetectorKind parse_detector(const std::string& s) {
    if (s == "ml") return DetectorKind::Ml;
    if (s == "cmrc") return DetectorKind::Cmrc;
    throw ValidationError("detector: unknown detector '" + s + "' (expected ml or cmrc)");
}

std::vector<double> SnrGrid::points() const {
    if (!(step_db > 0.0)) throw ValidationError("grid.step_db: must be > 0");
    if (stop_db < start_db) throw ValidationError("grid: stop_db must not be below start_db");
    const auto n = static_cast<std::size_t>(std::floor((stop_db - start_db) / step_db + 1e-9)) + 1;
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(start_db + static_cast<double>(i) * step_db);
    return out;
}

Scenario ScenarioConfig::scenario() const {
    Scenario sc;
    // for random NC the all-ones vectors are placeholders, redrawn per frame
    sc.code = NetworkCode(n_sources, relays);
    sc.variances = variances;
    sc.policy = policy;
    sc.random_nc = random_nc();
    sc.validate();
    return sc;
}

void ScenarioConfig::validate() const {
    if (modes.empty()) throw ValidationError("modes: must not be empty");
    (void)grid.points();
    try {
        stop.validate();
    } catch (const InvalidArgument& e) {
        throw ValidationError(std::string("stop: ") + e.what());
    }
    const bool has_pc = std::any_of(relays.begin(), relays.end(), [](const Relay& r) { return r.cls == RelayClass::Partial; });
    for (Mode m : modes) {
        if (random_nc() && (m == Mode::Ub || m == Mode::Sv || m == Mode::Closed))
            throw ValidationError(std::string("modes: '") + mode_name(m) + "' needs a fixed code, not random_nc");
        if (m == Mode::Random && has_pc)
            throw ValidationError("modes: 'random' applies to networks of full-cooperative relays only");
        if (m == Mode::Closed && !random_nc()) {
            const bool single = relays.size() == 1 && relays[0].cls == RelayClass::Full &&
                                std::all_of(relays[0].g.source_mask.begin(), relays[0].g.source_mask.end(),
                                            [](std::uint8_t b) { return b != 0; });
            if (!single && !has_pc)
                throw ValidationError("modes: 'closed' needs one FC relay coding every source, or PC relays");
        }
    }
}

ScenarioConfig parse_config_text(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text, nullptr, true, true);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        std::string what = e.what();
        // drop nlohmann's "[json.exception.parse_error.101] parse error at ...: " prefix
        if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
        throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
    }

    ScenarioConfig cfg;
    check_keys(doc, "", {"name", "n_sources", "relays", "random_nc", "variances", "energy", "grid", "detector",
                         "modes", "stop", "seed", "bound_error"});

    if (doc.contains("name")) {
        if (!doc["name"].is_string()) fail("name", "expected a string");
        cfg.name = doc["name"].get<std::string>();
    }
    if (!doc.contains("n_sources")) fail("n_sources", "required");
    cfg.n_sources = count(doc["n_sources"], "n_sources", 1);

    const bool has_relays = doc.contains("relays"), has_random = doc.contains("random_nc");
    if (has_relays == has_random) fail("relays", "give exactly one of 'relays' or 'random_nc'");
    if (has_relays) {
        const json& rl = doc["relays"];
        if (!rl.is_array() || rl.empty()) fail("relays", "expected a non-empty array");
        bool seen_full = false;
        for (std::size_t q = 0; q < rl.size(); ++q) {
            const std::string p = "relays[" + std::to_string(q) + "]";
            check_keys(rl[q], p, {"class", "vector"});
            Relay r;
            const std::string cls = rl[q].value("class", std::string("full"));
            if (cls == "full")
                r.cls = RelayClass::Full;
            else if (cls == "partial")
                r.cls = RelayClass::Partial;
            else
                fail(p + ".class", "expected 'full' or 'partial'");
            if (r.cls == RelayClass::Partial && seen_full)
                fail(p, "partial-cooperative relays must be listed before full-cooperative ones");
            seen_full = seen_full || r.cls == RelayClass::Full;
            if (!rl[q].contains("vector") || !rl[q]["vector"].is_array()) fail(p + ".vector", "expected an array of 0/1");
            const json& v = rl[q]["vector"];
            if (v.size() != cfg.n_sources)
                fail(p + ".vector", "expected " + std::to_string(cfg.n_sources) + " entries, got " + std::to_string(v.size()));
            for (std::size_t t = 0; t < v.size(); ++t) {
                if (!v[t].is_number_integer() || (v[t].get<int>() != 0 && v[t].get<int>() != 1))
                    fail(p + ".vector[" + std::to_string(t) + "]", "expected 0 or 1");
                r.g.source_mask.push_back(static_cast<std::uint8_t>(v[t].get<int>()));
            }
            if (r.cls == RelayClass::Full &&
                std::none_of(r.g.source_mask.begin(), r.g.source_mask.end(), [](std::uint8_t b) { return b; }))
                fail(p + ".vector", "all-zero encoding vector on a full-cooperative relay (it would transmit a constant)");
            cfg.relays.push_back(r);
        }
    } else {
        check_keys(doc["random_nc"], "random_nc", {"n_relays"});
        if (!doc["random_nc"].contains("n_relays")) fail("random_nc.n_relays", "required");
        cfg.random_relays = count(doc["random_nc"]["n_relays"], "random_nc.n_relays", 1);
        cfg.relays.assign(cfg.random_relays, Relay{RelayClass::Full, {Bits(cfg.n_sources, 1), false}});
    }
    const std::size_t ns = cfg.n_sources, nr = cfg.relays.size();
    if (ns + nr > 64) fail("relays", "more than 64 nodes");

    // variances
    if (doc.contains("variances")) {
        const json& v = doc["variances"];
        check_keys(v, "variances", {"iid", "source_relay", "source_dest", "relay_dest"});
        if (v.contains("iid")) cfg.iid_variance = positive(v["iid"], "variances.iid");
    }
    cfg.variances.source_relay.assign(ns, std::vector<double>(nr, cfg.iid_variance));
    cfg.variances.source_dest.assign(ns, cfg.iid_variance);
    cfg.variances.relay_dest.assign(nr, cfg.iid_variance);
    if (doc.contains("variances")) {
        const json& v = doc["variances"];
        if (v.contains("source_relay")) {
            const json& sr = v["source_relay"];
            if (sr.is_array()) {
                if (sr.size() != ns)
                    fail("variances.source_relay", "expected " + std::to_string(ns) + " rows (one per source)");
                for (std::size_t t = 0; t < ns; ++t)
                    cfg.variances.source_relay[t] =
                        per_link(sr[t], nr, "variances.source_relay[" + std::to_string(t) + "]");
            } else {
                const double s = positive(sr, "variances.source_relay");
                for (auto& row : cfg.variances.source_relay) std::fill(row.begin(), row.end(), s);
            }
        }
        if (v.contains("source_dest")) cfg.variances.source_dest = per_link(v["source_dest"], ns, "variances.source_dest");
        if (v.contains("relay_dest")) cfg.variances.relay_dest = per_link(v["relay_dest"], nr, "variances.relay_dest");
    }

    // energy policy: uniform unless overridden
    cfg.policy = EnergyPolicy::uniform(NetworkCode(ns, cfg.relays));
    if (doc.contains("energy")) {
        const json& e = doc["energy"];
        check_keys(e, "energy", {"chi_source", "chi_relay"});
        if (e.contains("chi_source")) cfg.policy.chi_source = per_link(e["chi_source"], ns, "energy.chi_source");
        if (e.contains("chi_relay")) cfg.policy.chi_relay = per_link(e["chi_relay"], nr, "energy.chi_relay");
        for (std::size_t i = 0; i < ns; ++i)
            if (cfg.policy.chi_source[i] > 1.0) fail("energy.chi_source", "multipliers must lie in (0, 1]");
        for (std::size_t i = 0; i < nr; ++i)
            if (cfg.policy.chi_relay[i] > 1.0) fail("energy.chi_relay", "multipliers must lie in (0, 1]");
    }

    // grid
    if (!doc.contains("grid")) fail("grid", "required");
    check_keys(doc["grid"], "grid", {"start_db", "stop_db", "step_db"});
    for (const char* k : {"start_db", "stop_db", "step_db"})
        if (!doc["grid"].contains(k)) fail(std::string("grid.") + k, "required");
    cfg.grid.start_db = number(doc["grid"]["start_db"], "grid.start_db");
    cfg.grid.stop_db = number(doc["grid"]["stop_db"], "grid.stop_db");
    cfg.grid.step_db = number(doc["grid"]["step_db"], "grid.step_db");
    if (!(cfg.grid.step_db > 0.0)) fail("grid.step_db", "must be > 0");
    if (cfg.grid.stop_db < cfg.grid.start_db) fail("grid.stop_db", "must not be below grid.start_db");

    if (doc.contains("detector")) {
        if (!doc["detector"].is_string()) fail("detector", "expected a string");
        cfg.detector = parse_detector(doc["detector"].get<std::string>());
    }

    if (!doc.contains("modes")) fail("modes", "required");
    if (!doc["modes"].is_array() || doc["modes"].empty()) fail("modes", "expected a non-empty array");
    std::set<Mode> seen;
    for (const auto& m : doc["modes"]) {
        if (!m.is_string()) fail("modes", "expected strings");
        const Mode mode = parse_mode(m.get<std::string>());
        if (seen.insert(mode).second) cfg.modes.push_back(mode);
    }

    if (doc.contains("stop")) {
        check_keys(doc["stop"], "stop", {"target_errors", "max_frames"});
        if (doc["stop"].contains("target_errors"))
            cfg.stop.target_errors = count(doc["stop"]["target_errors"], "stop.target_errors", 1);
        if (doc["stop"].contains("max_frames"))
            cfg.stop.max_frames = count(doc["stop"]["max_frames"], "stop.max_frames", 1);
    }
    if (doc.contains("seed")) cfg.seed = count(doc["seed"], "seed", 0);

    if (doc.contains("bound_error")) {
        const json& b = doc["bound_error"];
        check_keys(b, "bound_error", {"n_sources", "samples"});
        BoundErrorSpec spec;
        if (!b.contains("n_sources") || !b["n_sources"].is_array() || b["n_sources"].empty())
            fail("bound_error.n_sources", "expected a non-empty array");
        for (std::size_t i = 0; i < b["n_sources"].size(); ++i)
            spec.n_sources.push_back(count(b["n_sources"][i], "bound_error.n_sources[" + std::to_string(i) + "]", 1));
        if (b.contains("samples")) spec.samples = count(b["samples"], "bound_error.samples", 1);
        cfg.bound_error = spec;
    }

    cfg.validate();
    return cfg;
}

ScenarioConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

} // namespace ncoop
