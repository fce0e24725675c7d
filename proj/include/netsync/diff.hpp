#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netsync/time.hpp"

namespace netsync {

struct SyncComparison {
    std::uint64_t sync_id = 0;
    std::string algorithm;
    std::string status_a;  // complete, aborted or missing
    std::string status_b;
    std::optional<SimTime> precision_a;  // max |residual|
    std::optional<SimTime> precision_b;
};

struct TraceDiff {
    bool identical = false;
    std::size_t records_a = 0;
    std::size_t records_b = 0;
    std::optional<std::size_t> first_difference;  // 1-based line
    std::size_t differing_lines = 0;
    std::vector<SyncComparison> syncs;
};

/// Byte-level line comparison of two traces plus a per-sync accuracy table,
/// e.g. for a baseline run against an attacked run. Throws ParseError if
/// either text is not a valid trace.
TraceDiff diff_traces(std::string_view a, std::string_view b);

std::string render(const TraceDiff& diff);

}  // namespace netsync
