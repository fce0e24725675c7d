#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netsync/attacks.hpp"
#include "netsync/clock.hpp"
#include "netsync/sync.hpp"
#include "netsync/topology.hpp"

namespace netsync {

struct SimConfig {
    std::uint64_t seed = 1;
    double duration = 10.0;  // simulated seconds
    std::string name;

    bool operator==(const SimConfig&) const = default;
};

/// Knobs shared by every sync in a scenario.
struct SyncSettings {
    CorrectionPolicy policy;
    double service_time = 0.0;  // s
    double sync_message_bits = 12000.0;
    std::optional<double> outlier_threshold;  // s
    double timeout_factor = 5.0;
    double fallback_timeout = 1.0;  // s
    bool trace_attack_edges = false;
    bool fail_on_no_route = false;

    bool operator==(const SyncSettings&) const = default;
};

struct NamedClock {
    std::string name;
    std::string preset;  // empty for fully custom parameters
    ClockParameters params;

    bool operator==(const NamedClock&) const = default;
};

struct SyncTask {
    double time = 0.0;
    SyncAlgorithm algorithm = SyncAlgorithm::cristian;
    std::string client;  // cristian
    std::string server;
    std::string coordinator;  // berkeley
    std::vector<std::string> members;
    std::optional<double> outlier_threshold;  // overrides the scenario default

    bool operator==(const SyncTask&) const = default;
};

struct WorkloadItem {
    double time = 0.0;
    std::string source;
    std::string destination;
    double size_bits = 0.0;

    bool operator==(const WorkloadItem&) const = default;
};

struct Scenario {
    SimConfig config;
    SyncSettings sync;
    MediumSpeeds speeds;
    std::vector<NamedClock> clocks;
    NetworkGraph topology;
    std::vector<SyncTask> sync_schedule;
    std::vector<AttackSpec> attacks;
    std::vector<WorkloadItem> workload;

    const NamedClock* find_clock(std::string_view name) const;

    bool operator==(const Scenario&) const = default;
};

/// Parses scenario JSON without validating cross references. Throws ParseError
/// (line:column) for malformed text and ValidationError for ill-typed fields.
Scenario parse_scenario(std::string_view text);

/// Every violated invariant, each tagged with its entity or location.
std::vector<Violation> validate_scenario(const Scenario& scenario);

/// Parse + validate; a non-empty violation list raises ValidationError.
Scenario load_scenario_text(std::string_view text);
Scenario load_scenario(const std::string& path);

/// Canonical form: every default written out, presets expanded.
std::string write_scenario(const Scenario& scenario);

}  // namespace netsync
