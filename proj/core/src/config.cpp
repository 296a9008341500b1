#include "cafsim/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace cafsim {
namespace {

struct Entry {
    std::string value;
    int line = 0;
};

using Section = std::map<std::string, Entry>;

struct RawConfig {
    Section model;
    Section sweep;
    Section sim;
    std::vector<std::pair<Section, int>> scenarios;  // section, header line
};

std::string trim(const std::string& s) {
    std::size_t begin = 0, end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

// Collects problems; one ConfigError reports them all.
struct Issues {
    std::string origin;
    std::vector<std::string> messages;

    void add(int line, const std::string& message) {
        messages.push_back(origin + ":" + std::to_string(line) + ": " + message);
    }
    void add(const std::string& message) { messages.push_back(origin + ": " + message); }
    void raise_if_any() const {
        if (messages.empty()) return;
        std::string joined;
        for (const auto& m : messages) {
            if (!joined.empty()) joined += '\n';
            joined += m;
        }
        throw ConfigError(joined);
    }
};

RawConfig tokenize(const std::string& text, Issues& issues) {
    RawConfig raw;
    Section* current = nullptr;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty() || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                issues.add(lineno, "malformed section header '" + line + "'");
                current = nullptr;
                continue;
            }
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name == "model") {
                current = &raw.model;
            } else if (name == "sweep") {
                current = &raw.sweep;
            } else if (name == "sim") {
                current = &raw.sim;
            } else if (name == "scenario") {
                raw.scenarios.emplace_back(Section{}, lineno);
                current = &raw.scenarios.back().first;
            } else {
                issues.add(lineno, "unknown section [" + name + "]");
                current = nullptr;
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            issues.add(lineno, "expected 'key = value', got '" + line + "'");
            continue;
        }
        if (current == nullptr) {
            issues.add(lineno, "key outside of any section");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            issues.add(lineno, "empty key");
            continue;
        }
        if (current->count(key)) {
            issues.add(lineno, "duplicate key '" + key + "'");
            continue;
        }
        (*current)[key] = Entry{value, lineno};
    }
    return raw;
}

void reject_unknown_keys(const Section& section, std::initializer_list<const char*> known,
                         const std::string& where, Issues& issues) {
    for (const auto& [key, entry] : section) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) issues.add(entry.line, "unknown key '" + key + "' in [" + where + "]");
    }
}

std::optional<double> parse_double(const Section& section, const char* key, Issues& issues) {
    const auto it = section.find(key);
    if (it == section.end()) return std::nullopt;
    try {
        std::size_t consumed = 0;
        const double value = std::stod(it->second.value, &consumed);
        if (consumed != it->second.value.size()) throw std::invalid_argument("");
        return value;
    } catch (const std::exception&) {
        issues.add(it->second.line, std::string(key) + ": not a number: '" + it->second.value + "'");
        return std::nullopt;
    }
}

std::optional<std::uint64_t> parse_count(const Section& section, const char* key, Issues& issues) {
    const auto it = section.find(key);
    if (it == section.end()) return std::nullopt;
    try {
        std::size_t consumed = 0;
        // Scientific shorthand (1e6) is allowed for event counts.
        const double value = std::stod(it->second.value, &consumed);
        if (consumed != it->second.value.size() || value < 0 || value > 1e18 ||
            value != std::floor(value))
            throw std::invalid_argument("");
        return static_cast<std::uint64_t>(value);
    } catch (const std::exception&) {
        issues.add(it->second.line,
                   std::string(key) + ": not a non-negative integer: '" + it->second.value + "'");
        return std::nullopt;
    }
}

std::optional<bool> parse_bool(const Section& section, const char* key, Issues& issues) {
    const auto it = section.find(key);
    if (it == section.end()) return std::nullopt;
    const std::string& v = it->second.value;
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    issues.add(it->second.line, std::string(key) + ": expected true/false, got '" + v + "'");
    return std::nullopt;
}

std::optional<std::vector<double>> parse_grid(const Section& section, const char* key,
                                              Issues& issues) {
    const auto it = section.find(key);
    if (it == section.end()) return std::nullopt;
    const std::string& text = it->second.value;
    std::vector<double> grid;
    // Range form first:last:step, e.g. 0.5:5.0:0.5.
    if (text.find(':') != std::string::npos) {
        double first = 0, last = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (in >> first >> c1 >> last >> c2 >> step && c1 == ':' && c2 == ':' && step > 0 &&
            last >= first && in.eof()) {
            for (double v = first; v <= last + step * 1e-9; v += step) grid.push_back(v);
            return grid;
        }
        issues.add(it->second.line, std::string(key) + ": malformed range '" + text + "'");
        return std::nullopt;
    }
    std::string normalized = text;
    for (char& c : normalized)
        if (c == ',') c = ' ';
    std::istringstream in(normalized);
    double v = 0;
    while (in >> v) grid.push_back(v);
    if (!in.eof() || grid.empty()) {
        issues.add(it->second.line, std::string(key) + ": malformed value list '" + text + "'");
        return std::nullopt;
    }
    return grid;
}

std::optional<std::string> parse_string(const Section& section, const char* key) {
    const auto it = section.find(key);
    if (it == section.end()) return std::nullopt;
    return it->second.value;
}

int entry_line(const Section& section, const char* key) {
    const auto it = section.find(key);
    return it == section.end() ? 0 : it->second.line;
}

}  // namespace

SweepSpec parse_config(const std::string& text, const std::string& origin) {
    Issues issues{origin, {}};
    RawConfig raw = tokenize(text, issues);
    issues.raise_if_any();  // do not validate on top of parse errors

    reject_unknown_keys(raw.model, {"channels", "lambda_p", "lambda_s", "mu_p", "h_s", "r_s"},
                        "model", issues);
    reject_unknown_keys(raw.sweep, {"variable", "grid", "engines", "agreement_tolerance"},
                        "sweep", issues);
    reject_unknown_keys(raw.sim, {"events", "warmup", "replications", "seed", "track_map"},
                        "sim", issues);
    for (const auto& scenario_section : raw.scenarios)
        reject_unknown_keys(scenario_section.first, {"label", "mode", "b_min", "b_max"},
                            "scenario", issues);

    SweepSpec spec;

    // [sweep]
    if (auto variable = parse_string(raw.sweep, "variable")) {
        if (*variable == "lambda_p")
            spec.variable = SweepVariable::PuArrivalRate;
        else if (*variable == "lambda_s")
            spec.variable = SweepVariable::SuArrivalRate;
        else if (*variable == "mu_p")
            spec.variable = SweepVariable::PuServiceRate;
        else
            issues.add(entry_line(raw.sweep, "variable"),
                       "variable: expected lambda_p, lambda_s or mu_p, got '" + *variable + "'");
    }
    if (auto grid = parse_grid(raw.sweep, "grid", issues)) {
        spec.grid = *grid;
    } else if (!raw.sweep.count("grid")) {
        if (spec.variable == SweepVariable::PuArrivalRate)
            spec.grid = default_pu_arrival_grid();
        else
            issues.add("grid: required when the swept variable is not lambda_p");
    }
    if (auto engines = parse_string(raw.sweep, "engines")) {
        if (*engines == "analytical")
            spec.engines = EngineSelection::Analytical;
        else if (*engines == "simulation")
            spec.engines = EngineSelection::Simulation;
        else if (*engines == "both")
            spec.engines = EngineSelection::Both;
        else
            issues.add(entry_line(raw.sweep, "engines"),
                       "engines: expected analytical, simulation or both, got '" + *engines + "'");
    }
    if (auto tol = parse_double(raw.sweep, "agreement_tolerance", issues))
        spec.agreement_tolerance = *tol;

    // [model]
    SystemParams base;
    if (auto channels = parse_count(raw.model, "channels", issues))
        base.channels = static_cast<int>(*channels);
    else if (!raw.model.count("channels"))
        issues.add("channels: required in [model]");
    auto require_rate = [&](const char* key, double& field, bool required) {
        if (auto value = parse_double(raw.model, key, issues))
            field = *value;
        else if (required && !raw.model.count(key))
            issues.add(std::string(key) + ": required in [model]");
    };
    // The swept variable may be omitted; the first grid point stands in until
    // the sweep overrides it.
    require_rate("lambda_p", base.pu_arrival_rate,
                 spec.variable != SweepVariable::PuArrivalRate);
    require_rate("lambda_s", base.su_arrival_rate,
                 spec.variable != SweepVariable::SuArrivalRate);
    require_rate("mu_p", base.pu_service_rate, spec.variable != SweepVariable::PuServiceRate);
    require_rate("h_s", base.su_holding_rate, true);
    require_rate("r_s", base.su_residence_rate, true);
    if (!spec.grid.empty()) {
        if (spec.variable == SweepVariable::PuArrivalRate && !raw.model.count("lambda_p"))
            base.pu_arrival_rate = spec.grid.front();
        if (spec.variable == SweepVariable::SuArrivalRate && !raw.model.count("lambda_s"))
            base.su_arrival_rate = spec.grid.front();
        if (spec.variable == SweepVariable::PuServiceRate && !raw.model.count("mu_p"))
            base.pu_service_rate = spec.grid.front();
    }

    // [scenario] sections
    int index = 0;
    for (const auto& [section, line] : raw.scenarios) {
        Scenario scenario;
        scenario.params = base;
        scenario.label = parse_string(section, "label").value_or("scenario" + std::to_string(index));
        if (auto mode = parse_string(section, "mode")) {
            if (*mode == "caf")
                scenario.mode = SharingMode::Caf;
            else if (*mode == "cca")
                scenario.mode = SharingMode::Cca;
            else
                issues.add(entry_line(section, "mode"),
                           "mode: expected caf or cca, got '" + *mode + "'");
        }
        if (auto bmin = parse_double(section, "b_min", issues))
            scenario.params.min_bandwidth = *bmin;
        else if (!section.count("b_min"))
            issues.add(line, "b_min: required in [scenario]");
        if (auto bmax = parse_double(section, "b_max", issues))
            scenario.params.max_bandwidth = *bmax;
        else if (!section.count("b_max"))
            issues.add(line, "b_max: required in [scenario]");
        for (const auto& violation : scenario.violations())
            issues.add(line, "scenario " + scenario.label + ": " + violation);
        spec.scenarios.push_back(std::move(scenario));
        ++index;
    }

    // [sim]
    if (auto events = parse_count(raw.sim, "events", issues)) spec.sim.max_events = *events;
    if (auto warmup = parse_count(raw.sim, "warmup", issues))
        spec.sim.warmup_events = *warmup;
    else if (!raw.sim.count("warmup"))
        spec.sim.warmup_events = spec.sim.max_events / 10;
    if (auto reps = parse_count(raw.sim, "replications", issues))
        spec.sim.replications = static_cast<int>(*reps);
    if (auto seed = parse_count(raw.sim, "seed", issues)) spec.sim.seed = *seed;
    if (auto track = parse_bool(raw.sim, "track_map", issues))
        spec.sim.track_spectrum_map = *track;

    // Whole-spec invariants (grid ordering, sim sizes, label uniqueness).
    // Per-scenario violations were already reported above with their section
    // lines, so the "scenario <label>:" entries are filtered out here.
    for (const auto& violation : spec.violations())
        if (violation.rfind("scenario ", 0) != 0) issues.add(violation);
    issues.raise_if_any();
    return spec;
}

SweepSpec load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.filename().string());
}

}  // namespace cafsim
