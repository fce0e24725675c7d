#include "netsync/simulation.hpp"

namespace netsync {

std::map<std::string, SoftwareClock> build_clocks(const Scenario& scenario, std::uint64_t seed) {
    std::map<std::string, SoftwareClock> clocks;
    for (const auto& n : scenario.topology.nodes()) {
        if (n.is_router()) continue;
        const NamedClock* c = scenario.find_clock(n.clock);
        clocks.emplace(n.id, SoftwareClock(n.id, c ? c->params : ClockParameters{}, seed));
    }
    return clocks;
}

World build_world(const Scenario& scenario, std::uint64_t seed) {
    World w;
    w.graph = scenario.topology;
    w.speeds = scenario.speeds;
    w.seed = seed;
    w.attacks = scenario.attacks;
    w.clocks = build_clocks(scenario, seed);
    w.trace_attack_edges = scenario.sync.trace_attack_edges;
    return w;
}

SyncOptions sync_options(const Scenario& scenario, const SyncTask& task) {
    SyncOptions o;
    o.policy = scenario.sync.policy;
    o.service_time = to_picos(scenario.sync.service_time);
    o.message_bits = scenario.sync.sync_message_bits;
    const auto threshold = task.outlier_threshold ? task.outlier_threshold : scenario.sync.outlier_threshold;
    if (threshold) o.outlier_threshold = to_picos(*threshold);
    o.timeout_factor = scenario.sync.timeout_factor;
    o.fallback_timeout = to_picos(scenario.sync.fallback_timeout);
    return o;
}

RunResult run_scenario(const Scenario& scenario, std::uint64_t seed) {
    Engine engine(build_world(scenario, seed));
    std::vector<SyncHandle> handles;
    for (const auto& task : scenario.sync_schedule) {
        const SimTime at = to_picos(task.time);
        const auto options = sync_options(scenario, task);
        if (task.algorithm == SyncAlgorithm::cristian) {
            handles.push_back(cristian_sync(engine, task.client, task.server, at, options));
        } else {
            handles.push_back(berkeley_round(engine, task.coordinator, task.members, at, options));
        }
    }
    for (const auto& item : scenario.workload) {
        engine.send_message(item.source, item.destination, item.size_bits, to_picos(item.time));
    }
    engine.run_until(to_picos(scenario.config.duration));
    engine.drain();

    RunResult result;
    result.trace = engine.trace();
    result.messages = engine.messages();
    result.clocks = engine.world().clocks;
    for (const auto& h : handles) {
        result.reports.push_back(*h);
        if (scenario.sync.fail_on_no_route && h->aborted) result.fatal = true;
    }
    return result;
}

}  // namespace netsync
