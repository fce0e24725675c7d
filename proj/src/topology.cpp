#include "netsync/topology.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "netsync/errors.hpp"
#include "netsync/random.hpp"

namespace netsync {

std::string_view to_string(NodeKind k) {
    switch (k) {
        case NodeKind::client: return "client";
        case NodeKind::time_server: return "time_server";
        case NodeKind::router: return "router";
    }
    return "client";
}

std::string_view to_string(RouterKind k) { return k == RouterKind::wifi ? "wifi" : "regular"; }

std::string_view to_string(Medium m) {
    switch (m) {
        case Medium::fiber: return "fiber";
        case Medium::copper: return "copper";
        case Medium::wireless: return "wireless";
        case Medium::satellite: return "satellite";
    }
    return "fiber";
}

std::string_view to_string(FailureMode m) {
    switch (m) {
        case FailureMode::always_active: return "always_active";
        case FailureMode::always_failed: return "always_failed";
        case FailureMode::bernoulli: return "bernoulli";
        case FailureMode::alternating: return "alternating";
    }
    return "always_active";
}

NodeKind node_kind_from_string(std::string_view s) {
    if (s == "client") return NodeKind::client;
    if (s == "time_server") return NodeKind::time_server;
    if (s == "router") return NodeKind::router;
    throw ConfigError("unknown node kind '" + std::string(s) + "'");
}

RouterKind router_kind_from_string(std::string_view s) {
    if (s == "wifi") return RouterKind::wifi;
    if (s == "regular") return RouterKind::regular;
    throw ConfigError("unknown router kind '" + std::string(s) + "'");
}

Medium medium_from_string(std::string_view s) {
    if (s == "fiber") return Medium::fiber;
    if (s == "copper") return Medium::copper;
    if (s == "wireless") return Medium::wireless;
    if (s == "satellite") return Medium::satellite;
    throw ConfigError("unknown medium '" + std::string(s) + "'");
}

FailureMode failure_mode_from_string(std::string_view s) {
    if (s == "always_active") return FailureMode::always_active;
    if (s == "always_failed") return FailureMode::always_failed;
    if (s == "bernoulli") return FailureMode::bernoulli;
    if (s == "alternating") return FailureMode::alternating;
    throw ConfigError("unknown failure mode '" + std::string(s) + "'");
}

double& MediumSpeeds::operator[](Medium m) {
    switch (m) {
        case Medium::fiber: return fiber;
        case Medium::copper: return copper;
        case Medium::wireless: return wireless;
        case Medium::satellite: return satellite;
    }
    return fiber;
}

double MediumSpeeds::operator[](Medium m) const { return const_cast<MediumSpeeds&>(*this)[m]; }

double medium_speed(Medium m, const MediumSpeeds& speeds) { return speeds[m]; }

double default_router_delay(RouterKind k) { return k == RouterKind::wifi ? 500e-6 : 50e-6; }

std::size_t NetworkGraph::add_node(NodeSpec node) {
    const std::size_t i = nodes_.size();
    index_.try_emplace(node.id, i);
    nodes_.push_back(std::move(node));
    rebuild_adjacency();
    return i;
}

std::size_t NetworkGraph::add_link(LinkSpec link) {
    links_.push_back(std::move(link));
    rebuild_adjacency();
    return links_.size() - 1;
}

std::optional<std::size_t> NetworkGraph::index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> NetworkGraph::link_between(std::size_t u, std::size_t v) const {
    for (const auto& n : adjacency_.at(u)) {
        if (n.node == v) return n.link;
    }
    return std::nullopt;
}

bool NetworkGraph::connected(std::size_t a, std::size_t b) const {
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<std::size_t> stack{a};
    seen.at(a) = true;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        if (u == b) return true;
        for (const auto& n : adjacency_[u]) {
            if (!seen[n.node]) {
                seen[n.node] = true;
                stack.push_back(n.node);
            }
        }
    }
    return false;
}

void NetworkGraph::rebuild_adjacency() {
    adjacency_.assign(nodes_.size(), {});
    for (std::size_t l = 0; l < links_.size(); ++l) {
        auto a = index_of(links_[l].a);
        auto b = index_of(links_[l].b);
        if (!a || !b || *a == *b) continue;
        const auto& existing = adjacency_[*a];
        if (std::any_of(existing.begin(), existing.end(), [&](const Neighbor& n) { return n.node == *b; })) continue;
        adjacency_[*a].push_back({*b, l});
        adjacency_[*b].push_back({*a, l});
    }
    for (auto& list : adjacency_) {
        std::sort(list.begin(), list.end(),
                  [this](const Neighbor& x, const Neighbor& y) { return nodes_[x.node].id < nodes_[y.node].id; });
    }
}

std::vector<Violation> validate(const NetworkGraph& graph) {
    std::vector<Violation> out;
    std::set<std::string> seen_ids;
    for (const auto& n : graph.nodes()) {
        if (n.id.empty()) out.push_back({"<node>", "node id is empty"});
        if (!seen_ids.insert(n.id).second) out.push_back({n.id, "duplicate node id"});
        if (n.is_router()) {
            if (!n.router_delay) {
                out.push_back({n.id, "router has no router_delay"});
            } else if (!(*n.router_delay >= 0.0) || !std::isfinite(*n.router_delay)) {
                out.push_back({n.id, "router_delay must be non-negative"});
            }
            const auto& f = n.failure;
            if (f.mode == FailureMode::bernoulli && !(f.failure_probability >= 0.0 && f.failure_probability <= 1.0)) {
                out.push_back({n.id, "failure_probability must lie in [0, 1]"});
            }
            if (f.mode == FailureMode::alternating &&
                !(f.up_duration >= 0.0 && f.down_duration >= 0.0 && f.up_duration + f.down_duration > 0.0)) {
                out.push_back({n.id, "alternating failure model needs non-negative up/down durations with a positive period"});
            }
        } else {
            if (n.router_delay) out.push_back({n.id, "router_delay set on a non-router node"});
            if (n.clock.empty()) out.push_back({n.id, "node has no clock"});
        }
    }
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& l : graph.links()) {
        const std::string id = l.id();
        if (!graph.index_of(l.a)) out.push_back({l.a, "link " + id + " references absent node '" + l.a + "'"});
        if (!graph.index_of(l.b)) out.push_back({l.b, "link " + id + " references absent node '" + l.b + "'"});
        if (l.a == l.b) out.push_back({id, "self-loop"});
        if (!(l.bandwidth > 0.0) || !std::isfinite(l.bandwidth)) out.push_back({id, "bandwidth must be positive"});
        if (!(l.distance >= 0.0) || !std::isfinite(l.distance)) out.push_back({id, "distance must be non-negative"});
        auto key = std::minmax(l.a, l.b);
        if (!pairs.insert({key.first, key.second}).second) out.push_back({id, "more than one link between the same nodes"});
    }
    return out;
}

int router_flag(const NodeSpec& node, const FlagQuery& query) {
    if (!node.is_router()) throw DomainError("router_flag queried on non-router node '" + node.id + "'");
    const auto& f = node.failure;
    switch (f.mode) {
        case FailureMode::always_active: return 1;
        case FailureMode::always_failed: return 0;
        case FailureMode::bernoulli: {
            const double u = uniform01({query.seed, StreamTag::router_failure, hash_id(node.id), query.epoch});
            return u < f.failure_probability ? 0 : 1;
        }
        case FailureMode::alternating: {
            const SimTime up = to_picos(f.up_duration);
            const SimTime period = up + to_picos(f.down_duration);
            if (period <= 0) return 1;
            SimTime phase = query.time % period;
            if (phase < 0) phase += period;
            return phase < up ? 1 : 0;
        }
    }
    return 1;
}

}  // namespace netsync
