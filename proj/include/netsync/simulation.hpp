#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "netsync/engine.hpp"
#include "netsync/scenario.hpp"
#include "netsync/sync.hpp"
#include "netsync/trace.hpp"

namespace netsync {

struct RunResult {
    std::vector<TraceRecord> trace;
    std::vector<SyncReport> reports;
    std::vector<Message> messages;
    std::map<std::string, SoftwareClock> clocks;  // final clock states
    /// True when fail_on_no_route is set and some sync was aborted.
    bool fatal = false;
};

/// Per-node clocks for a scenario, each keyed by its node id.
std::map<std::string, SoftwareClock> build_clocks(const Scenario& scenario, std::uint64_t seed);

/// Engine world for a scenario under `seed`.
World build_world(const Scenario& scenario, std::uint64_t seed);

SyncOptions sync_options(const Scenario& scenario, const SyncTask& task);

/// Runs the scenario to its duration, then drains in-flight events so every
/// message reaches a terminal status.
RunResult run_scenario(const Scenario& scenario, std::uint64_t seed);

}  // namespace netsync
