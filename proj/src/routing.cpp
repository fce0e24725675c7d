#include "netsync/routing.hpp"

#include <algorithm>
#include <queue>

namespace netsync {

std::optional<SimTime> edge_weight(const NetworkView& view, std::size_t link, std::size_t downstream, double message_bits) {
    const auto& graph = view.graph();
    const auto& spec = graph.link(link);
    const auto& node = graph.node(downstream);
    SimTime w = to_picos(transmission_delay(message_bits, spec.bandwidth)) +
                to_picos(propagation_delay(spec.distance, view.speeds()[spec.medium]));
    if (node.is_router()) {
        if (!view.active(downstream)) return std::nullopt;
        w += view.state(downstream).delay;
    }
    return w;
}

namespace {

struct Label {
    SimTime cost = 0;
    std::vector<std::size_t> nodes;
};

// Strict total order: cost, then hop count, then node-id sequence.
// Extending two labels that end at the same node by the same edge preserves
// the order, which is what Dijkstra needs.
bool better(const NetworkGraph& g, const Label& x, const Label& y) {
    if (x.cost != y.cost) return x.cost < y.cost;
    if (x.nodes.size() != y.nodes.size()) return x.nodes.size() < y.nodes.size();
    return std::lexicographical_compare(x.nodes.begin(), x.nodes.end(), y.nodes.begin(), y.nodes.end(),
                                        [&g](std::size_t a, std::size_t b) { return g.node(a).id < g.node(b).id; });
}

}  // namespace

Route shortest_path(const NetworkView& view, const std::string& source, const std::string& destination,
                    double message_bits) {
    const auto& graph = view.graph();
    auto src = graph.index_of(source);
    auto dst = graph.index_of(destination);
    if (!src || !dst || *src == *dst || !view.active(*src)) throw NoRoute(source, destination);

    const std::size_t n = graph.nodes().size();
    std::vector<std::optional<Label>> best(n);
    std::vector<bool> settled(n, false);
    auto cmp = [&graph](const Label& x, const Label& y) { return better(graph, y, x); };
    std::priority_queue<Label, std::vector<Label>, decltype(cmp)> frontier(cmp);

    best[*src] = Label{0, {*src}};
    frontier.push(*best[*src]);
    while (!frontier.empty()) {
        Label cur = frontier.top();
        frontier.pop();
        const std::size_t u = cur.nodes.back();
        if (settled[u]) continue;
        settled[u] = true;
        if (u == *dst) break;
        for (const auto& nb : graph.neighbors(u)) {
            if (settled[nb.node]) continue;
            auto w = edge_weight(view, nb.link, nb.node, message_bits);
            if (!w) continue;
            Label next{cur.cost + *w, cur.nodes};
            next.nodes.push_back(nb.node);
            if (!best[nb.node] || better(graph, next, *best[nb.node])) {
                best[nb.node] = next;
                frontier.push(std::move(next));
            }
        }
    }
    if (!settled[*dst]) throw NoRoute(source, destination);

    Route r;
    r.nodes = best[*dst]->nodes;
    for (auto i : r.nodes) r.hops.push_back(graph.node(i).id);
    r.breakdown = total_path_delay(view, r.nodes, message_bits);
    return r;
}

Route shortest_path(const NetworkContext& net, const RouteQuery& query) {
    return shortest_path(net.view(query.query_time, query.message_id), query.source, query.destination,
                         query.message_bits);
}

namespace {

RouteLeg route_leg(const NetworkContext& net, const RouteQuery& q, const char* leg) {
    RouteLeg out;
    try {
        out.route = shortest_path(net, q);
    } catch (const NoRoute& e) {
        out.failure = NoRoute(e.source(), e.destination(), leg);
    }
    return out;
}

}  // namespace

RoundTrip round_trip_routes(const NetworkContext& net, const RouteQuery& request, const RouteQuery& reply) {
    if (reply.query_time < request.query_time) throw DomainError("reply time precedes request time");
    RoundTrip rt;
    rt.forward = route_leg(net, request, "forward");
    RouteQuery back = reply;
    back.source = request.destination;
    back.destination = request.source;
    rt.backward = route_leg(net, back, "backward");
    return rt;
}

}  // namespace netsync
