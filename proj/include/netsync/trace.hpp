#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netsync/attacks.hpp"
#include "netsync/time.hpp"

namespace netsync {

enum class EventKind { message_send, hop_arrival, delivery, timeout, sync_step, attack_edge };

std::string_view to_string(EventKind k);
/// Throws ParseError for unknown kinds.
EventKind event_kind_from_string(std::string_view s);

struct DelayFields {
    SimTime router = 0;
    SimTime transmission = 0;
    SimTime propagation = 0;
    SimTime total = 0;

    bool operator==(const DelayFields&) const = default;
};

/// Sync progress carried by sync_step records and by the records that
/// complete or abort a sync.
struct SyncFields {
    std::uint64_t sync_id = 0;
    std::string algorithm;
    std::string phase;  // start, serve, estimate, complete, aborted
    std::optional<std::uint64_t> messages_sent;
    std::optional<SimTime> convergence;
    std::map<std::string, SimTime> corrections;
    std::map<std::string, SimTime> residuals;
    std::map<std::string, SimTime> clock_errors;
    std::vector<std::string> excluded;
    std::vector<std::string> unreachable;
    std::string detail;

    bool operator==(const SyncFields&) const = default;
};

/// One executed event. Serialized as a single JSON object per line, keys in
/// a fixed order, empty fields omitted, all times in integer picoseconds.
struct TraceRecord {
    SimTime time = 0;
    std::uint64_t sequence = 0;
    EventKind kind = EventKind::sync_step;
    std::optional<std::uint64_t> message_id;
    std::string node;
    std::string peer;
    std::string status;
    std::vector<std::string> route;
    std::optional<DelayFields> delay;
    std::map<std::string, SimTime> clocks;
    std::vector<AttackNote> attacks;
    std::optional<SyncFields> sync;

    bool operator==(const TraceRecord&) const = default;
};

/// Published record keys, in serialization order.
const std::vector<std::string>& trace_field_names();

std::string to_json_line(const TraceRecord& record);
std::string serialize_trace(std::span<const TraceRecord> records);

/// Strict parse: unknown keys or kinds and missing required keys raise
/// ParseError.
TraceRecord parse_trace_line(std::string_view line);
std::vector<TraceRecord> parse_trace(std::string_view text);

}  // namespace netsync
