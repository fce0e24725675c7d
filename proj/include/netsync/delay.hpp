#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netsync/network.hpp"
#include "netsync/time.hpp"

namespace netsync {

enum class DelayComponent { router, transmission, propagation };

std::string_view to_string(DelayComponent c);

/// One term of a path delay. `hop` is the path index of the node the term
/// leads into (links) or belongs to (routers).
struct HopDelay {
    std::string element;  // link id or router id
    DelayComponent component = DelayComponent::router;
    std::size_t hop = 0;
    SimTime delay = 0;

    bool operator==(const HopDelay&) const = default;
};

/// Router, transmission and propagation totals of a path. Each term is
/// rounded to whole picoseconds before summation, so `total` is exactly the
/// sum of the three component totals.
struct PathDelayBreakdown {
    SimTime router_total = 0;
    SimTime transmission_total = 0;
    SimTime propagation_total = 0;
    SimTime total = 0;
    std::vector<HopDelay> per_hop;

    bool operator==(const PathDelayBreakdown&) const = default;
};

/// size / bandwidth, seconds. Throws DomainError unless bandwidth > 0 and
/// size >= 0.
double transmission_delay(double size_bits, double bandwidth_bps);
/// distance / speed, seconds. Throws DomainError unless speed > 0 and
/// distance >= 0.
double propagation_delay(double distance_m, double speed_mps);

// Path forms: per-hop terms rounded to picoseconds, then summed.
SimTime transmission_delay(double size_bits, std::span<const double> bandwidths_bps);
SimTime propagation_delay(std::span<const double> distances_m, std::span<const double> speeds_mps);

/// Sum of router delays along `path` (node indices). Every router on the path
/// must be active; the first inactive one raises PathBlocked. The source's own
/// delay is not charged.
SimTime router_path_delay(const NetworkView& view, std::span<const std::size_t> path);

/// Full decomposition of a path. Throws PathBlocked for an inactive router and
/// DomainError if consecutive nodes share no link.
PathDelayBreakdown total_path_delay(const NetworkView& view, std::span<const std::size_t> path, double message_bits);

/// Node ids to indices; throws DomainError for unknown ids.
std::vector<std::size_t> resolve_path(const NetworkGraph& graph, std::span<const std::string> ids);

}  // namespace netsync
