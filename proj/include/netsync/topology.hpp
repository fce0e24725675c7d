#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "netsync/time.hpp"

namespace netsync {

enum class NodeKind { client, time_server, router };
enum class RouterKind { wifi, regular };
enum class Medium { fiber, copper, wireless, satellite };
enum class FailureMode { always_active, always_failed, bernoulli, alternating };

std::string_view to_string(NodeKind k);
std::string_view to_string(RouterKind k);
std::string_view to_string(Medium m);
std::string_view to_string(FailureMode m);

// The *_from_string parsers throw ConfigError on unknown names.
NodeKind node_kind_from_string(std::string_view s);
RouterKind router_kind_from_string(std::string_view s);
Medium medium_from_string(std::string_view s);
FailureMode failure_mode_from_string(std::string_view s);

/// Signal propagation speed per medium, m/s. Fiber and copper default to
/// about two thirds of c; wireless and satellite links to free space.
struct MediumSpeeds {
    double fiber = 2.0e8;
    double copper = 2.0e8;
    double wireless = 2.998e8;
    double satellite = 2.998e8;

    double& operator[](Medium m);
    double operator[](Medium m) const;

    bool operator==(const MediumSpeeds&) const = default;
};

double medium_speed(Medium m, const MediumSpeeds& speeds = {});

/// Default per-traversal processing delay of each router kind, seconds.
double default_router_delay(RouterKind k);

struct FailureModel {
    FailureMode mode = FailureMode::always_active;
    double failure_probability = 0.0;  // bernoulli
    double up_duration = 0.0;          // alternating, seconds
    double down_duration = 0.0;

    bool operator==(const FailureModel&) const = default;
};

struct NodeSpec {
    std::string id;
    NodeKind kind = NodeKind::client;
    RouterKind router_kind = RouterKind::regular;
    std::optional<double> router_delay;  // seconds; routers only, kind default when unset
    FailureModel failure;
    std::string clock;  // clock name; clients and time servers

    bool is_router() const noexcept { return kind == NodeKind::router; }
    SimTime router_delay_ps() const {
        if (!is_router()) return 0;
        return to_picos(router_delay ? *router_delay : default_router_delay(router_kind));
    }

    bool operator==(const NodeSpec&) const = default;
};

struct LinkSpec {
    std::string a;
    std::string b;
    double bandwidth = 0.0;  // bits per second
    double distance = 0.0;   // meters
    Medium medium = Medium::fiber;

    std::string id() const { return a + "--" + b; }

    bool operator==(const LinkSpec&) const = default;
};

struct Neighbor {
    std::size_t node;
    std::size_t link;
};

/// Nodes and undirected links. Insertion never fails; structural problems are
/// reported by validate() so a single pass can list all of them.
class NetworkGraph {
public:
    std::size_t add_node(NodeSpec node);
    std::size_t add_link(LinkSpec link);

    const std::vector<NodeSpec>& nodes() const noexcept { return nodes_; }
    const std::vector<LinkSpec>& links() const noexcept { return links_; }
    const NodeSpec& node(std::size_t i) const { return nodes_.at(i); }
    const LinkSpec& link(std::size_t i) const { return links_.at(i); }

    std::optional<std::size_t> index_of(std::string_view id) const;
    /// Index of the (first) link joining u and v, if any.
    std::optional<std::size_t> link_between(std::size_t u, std::size_t v) const;
    /// Neighbors of a node, ordered by neighbor id.
    const std::vector<Neighbor>& neighbors(std::size_t node) const { return adjacency_.at(node); }

    /// True if b is reachable from a ignoring router state.
    bool connected(std::size_t a, std::size_t b) const;

    bool operator==(const NetworkGraph& other) const { return nodes_ == other.nodes_ && links_ == other.links_; }

private:
    void rebuild_adjacency();

    std::vector<NodeSpec> nodes_;
    std::vector<LinkSpec> links_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::vector<Neighbor>> adjacency_;
};

struct Violation {
    std::string entity;  // node id, link id or scenario path
    std::string message;

    bool operator==(const Violation&) const = default;
};

std::vector<Violation> validate(const NetworkGraph& graph);

/// Sampling context for router activity. `epoch` keys bernoulli draws: one
/// draw per router per message traversal attempt.
struct FlagQuery {
    SimTime time = 0;
    std::uint64_t seed = 0;
    std::uint64_t epoch = 0;
};

/// Activity indicator of a router (1 active, 0 failed). Throws DomainError for
/// non-router nodes.
int router_flag(const NodeSpec& node, const FlagQuery& query);

}  // namespace netsync
