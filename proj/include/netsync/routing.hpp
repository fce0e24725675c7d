#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netsync/delay.hpp"
#include "netsync/errors.hpp"
#include "netsync/network.hpp"

namespace netsync {

struct RouteQuery {
    std::string source;
    std::string destination;
    SimTime query_time = 0;
    double message_bits = 0.0;
    std::uint64_t message_id = 0;
};

struct Route {
    std::vector<std::string> hops;
    std::vector<std::size_t> nodes;
    PathDelayBreakdown breakdown;

    bool operator==(const Route&) const = default;
};

/// Cost of crossing `link` into `downstream`: transmission + propagation,
/// plus the downstream router's delay. Empty when the downstream router is
/// inactive (the edge is absent from this view).
std::optional<SimTime> edge_weight(const NetworkView& view, std::size_t link, std::size_t downstream, double message_bits);

/// Dijkstra over the view. Ties on total delay go to fewer hops, then to the
/// lexicographically smallest node-id sequence. Throws NoRoute.
Route shortest_path(const NetworkView& view, const std::string& source, const std::string& destination,
                    double message_bits);

/// Builds the view at query.query_time for query.message_id and routes.
Route shortest_path(const NetworkContext& net, const RouteQuery& query);

struct RouteLeg {
    std::optional<Route> route;
    std::optional<NoRoute> failure;

    bool ok() const noexcept { return route.has_value(); }
};

struct RoundTrip {
    RouteLeg forward;
    RouteLeg backward;
};

/// Forward leg routed at `request.query_time`, backward leg (destination back
/// to source) at `reply.query_time`, each with its own failure sampling.
/// Failures are reported per leg rather than thrown.
RoundTrip round_trip_routes(const NetworkContext& net, const RouteQuery& request, const RouteQuery& reply);

}  // namespace netsync
