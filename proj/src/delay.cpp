#include "netsync/delay.hpp"

#include <cmath>

#include "netsync/errors.hpp"

namespace netsync {

std::string_view to_string(DelayComponent c) {
    switch (c) {
        case DelayComponent::router: return "router";
        case DelayComponent::transmission: return "transmission";
        case DelayComponent::propagation: return "propagation";
    }
    return "router";
}

double transmission_delay(double size_bits, double bandwidth_bps) {
    if (!(bandwidth_bps > 0.0)) throw DomainError("bandwidth must be positive");
    if (!(size_bits >= 0.0)) throw DomainError("message size must be non-negative");
    return size_bits / bandwidth_bps;
}

double propagation_delay(double distance_m, double speed_mps) {
    if (!(speed_mps > 0.0)) throw DomainError("propagation speed must be positive");
    if (!(distance_m >= 0.0)) throw DomainError("distance must be non-negative");
    return distance_m / speed_mps;
}

SimTime transmission_delay(double size_bits, std::span<const double> bandwidths_bps) {
    SimTime sum = 0;
    for (double bw : bandwidths_bps) sum += to_picos(transmission_delay(size_bits, bw));
    return sum;
}

SimTime propagation_delay(std::span<const double> distances_m, std::span<const double> speeds_mps) {
    if (distances_m.size() != speeds_mps.size()) throw DomainError("distance and speed lists differ in length");
    SimTime sum = 0;
    for (std::size_t i = 0; i < distances_m.size(); ++i) sum += to_picos(propagation_delay(distances_m[i], speeds_mps[i]));
    return sum;
}

namespace {

void require_active(const NetworkView& view, std::size_t node) {
    if (!view.active(node)) throw PathBlocked(view.graph().node(node).id);
}

}  // namespace

SimTime router_path_delay(const NetworkView& view, std::span<const std::size_t> path) {
    SimTime sum = 0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto& node = view.graph().node(path[i]);
        if (!node.is_router()) continue;
        require_active(view, path[i]);
        if (i > 0) sum += view.state(path[i]).delay;
    }
    return sum;
}

PathDelayBreakdown total_path_delay(const NetworkView& view, std::span<const std::size_t> path, double message_bits) {
    const auto& graph = view.graph();
    PathDelayBreakdown b;
    if (!path.empty() && graph.node(path[0]).is_router()) require_active(view, path[0]);
    for (std::size_t i = 1; i < path.size(); ++i) {
        auto link_idx = graph.link_between(path[i - 1], path[i]);
        if (!link_idx) {
            throw DomainError("no link between '" + graph.node(path[i - 1]).id + "' and '" + graph.node(path[i]).id + "'");
        }
        const auto& link = graph.link(*link_idx);
        const SimTime tx = to_picos(transmission_delay(message_bits, link.bandwidth));
        const SimTime prop = to_picos(propagation_delay(link.distance, view.speeds()[link.medium]));
        b.per_hop.push_back({link.id(), DelayComponent::transmission, i, tx});
        b.per_hop.push_back({link.id(), DelayComponent::propagation, i, prop});
        b.transmission_total += tx;
        b.propagation_total += prop;

        const auto& node = graph.node(path[i]);
        if (node.is_router()) {
            require_active(view, path[i]);
            const SimTime rd = view.state(path[i]).delay;
            b.per_hop.push_back({node.id, DelayComponent::router, i, rd});
            b.router_total += rd;
        }
    }
    b.total = b.router_total + b.transmission_total + b.propagation_total;
    return b;
}

std::vector<std::size_t> resolve_path(const NetworkGraph& graph, std::span<const std::string> ids) {
    std::vector<std::size_t> out;
    out.reserve(ids.size());
    for (const auto& id : ids) {
        auto idx = graph.index_of(id);
        if (!idx) throw DomainError("unknown node '" + id + "'");
        out.push_back(*idx);
    }
    return out;
}

}  // namespace netsync
