#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netsync/trace.hpp"

namespace netsync {

struct SyncMetric {
    std::uint64_t sync_id = 0;
    std::string algorithm;
    bool completed = false;
    double precision_range_ns = 0.0;  // max |residual|
    std::uint64_t messages_sent = 0;
    SimTime convergence_time = 0;
};

struct DelayStats {
    std::uint64_t count = 0;
    SimTime min = 0;
    SimTime max = 0;
    double mean = 0.0;

    void add(SimTime v);
};

/// Run summary: accuracy (precision range), communication cost
/// (messages_sent) and time cost (convergence) per sync and in aggregate,
/// plus the host/network split of delivered message delays.
struct MetricsReport {
    std::vector<SyncMetric> syncs;
    std::uint64_t syncs_completed = 0;
    std::uint64_t syncs_aborted = 0;
    std::optional<double> precision_range_ns;  // over completed syncs
    std::uint64_t messages_sent = 0;            // by sync algorithms
    SimTime max_convergence_time = 0;

    std::uint64_t messages_total = 0;
    std::uint64_t messages_delivered = 0;
    std::uint64_t messages_dropped = 0;
    std::uint64_t messages_blocked = 0;
    DelayStats host_delay;     // router processing
    DelayStats network_delay;  // transmission + propagation
    DelayStats total_delay;
};

MetricsReport metrics_report(std::span<const TraceRecord> trace);

/// Pretty-printed JSON.
std::string to_json(const MetricsReport& report);

}  // namespace netsync
