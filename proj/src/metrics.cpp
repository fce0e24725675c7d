#include "netsync/metrics.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

namespace netsync {

void DelayStats::add(SimTime v) {
    if (count == 0) {
        min = max = v;
    } else {
        min = std::min(min, v);
        max = std::max(max, v);
    }
    ++count;
    mean += (static_cast<double>(v) - mean) / static_cast<double>(count);
}

MetricsReport metrics_report(std::span<const TraceRecord> trace) {
    MetricsReport m;
    std::map<std::uint64_t, DelayFields> sent;
    std::map<std::uint64_t, std::string> outcome;
    for (const auto& r : trace) {
        if (r.message_id) {
            if (r.kind == EventKind::message_send) {
                ++m.messages_total;
                if (r.delay) sent[*r.message_id] = *r.delay;
                if (r.status == "blocked" || r.status == "dropped") outcome[*r.message_id] = r.status;
            } else if (r.kind == EventKind::delivery) {
                outcome[*r.message_id] = "delivered";
            } else if (r.kind == EventKind::hop_arrival && r.status == "dropped") {
                outcome[*r.message_id] = "dropped";
            }
        }
        if (!r.sync || (r.sync->phase != "complete" && r.sync->phase != "aborted")) continue;
        SyncMetric s;
        s.sync_id = r.sync->sync_id;
        s.algorithm = r.sync->algorithm;
        s.completed = r.sync->phase == "complete";
        s.messages_sent = r.sync->messages_sent.value_or(0);
        s.convergence_time = r.sync->convergence.value_or(0);
        SimTime worst = 0;
        for (const auto& [node, res] : r.sync->residuals) worst = std::max(worst, res < 0 ? -res : res);
        s.precision_range_ns = to_nanos(worst);
        m.messages_sent += s.messages_sent;
        if (s.completed) {
            ++m.syncs_completed;
            m.precision_range_ns = std::max(m.precision_range_ns.value_or(0.0), s.precision_range_ns);
            m.max_convergence_time = std::max(m.max_convergence_time, s.convergence_time);
        } else {
            ++m.syncs_aborted;
        }
        m.syncs.push_back(s);
    }
    std::sort(m.syncs.begin(), m.syncs.end(), [](const SyncMetric& a, const SyncMetric& b) { return a.sync_id < b.sync_id; });
    for (const auto& [id, status] : outcome) {
        if (status == "delivered") {
            ++m.messages_delivered;
            auto it = sent.find(id);
            if (it == sent.end()) continue;
            m.host_delay.add(it->second.router);
            m.network_delay.add(it->second.transmission + it->second.propagation);
            m.total_delay.add(it->second.total);
        } else if (status == "dropped") {
            ++m.messages_dropped;
        } else if (status == "blocked") {
            ++m.messages_blocked;
        }
    }
    return m;
}

namespace {

nlohmann::ordered_json stats_json(const DelayStats& s) {
    return {{"count", s.count}, {"min_ps", s.min}, {"max_ps", s.max}, {"mean_ps", s.mean}};
}

}  // namespace

std::string to_json(const MetricsReport& m) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json agg;
    agg["syncs_completed"] = m.syncs_completed;
    agg["syncs_aborted"] = m.syncs_aborted;
    agg["precision_range_ns"] = m.precision_range_ns ? nlohmann::ordered_json(*m.precision_range_ns) : nullptr;
    agg["messages_sent"] = m.messages_sent;
    agg["max_convergence_time_ps"] = m.max_convergence_time;
    j["aggregate"] = agg;

    auto syncs = nlohmann::ordered_json::array();
    for (const auto& s : m.syncs) {
        syncs.push_back({{"sync_id", s.sync_id},
                         {"algorithm", s.algorithm},
                         {"status", s.completed ? "complete" : "aborted"},
                         {"precision_range_ns", s.precision_range_ns},
                         {"messages_sent", s.messages_sent},
                         {"convergence_time_ps", s.convergence_time}});
    }
    j["syncs"] = syncs;

    nlohmann::ordered_json msgs;
    msgs["total"] = m.messages_total;
    msgs["delivered"] = m.messages_delivered;
    msgs["dropped"] = m.messages_dropped;
    msgs["blocked"] = m.messages_blocked;
    msgs["host_delay"] = stats_json(m.host_delay);
    msgs["network_delay"] = stats_json(m.network_delay);
    msgs["total_delay"] = stats_json(m.total_delay);
    j["messages"] = msgs;
    return j.dump(2) + "\n";
}

}  // namespace netsync
