#pragma once

// Builders and independent oracles shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "netsync/engine.hpp"
#include "netsync/network.hpp"
#include "netsync/scenario.hpp"
#include "netsync/simulation.hpp"
#include "netsync/topology.hpp"

namespace testing {

using namespace netsync;

inline NodeSpec client(std::string id) {
    NodeSpec n;
    n.id = std::move(id);
    n.kind = NodeKind::client;
    return n;
}

inline NodeSpec server(std::string id) {
    NodeSpec n;
    n.id = std::move(id);
    n.kind = NodeKind::time_server;
    return n;
}

inline NodeSpec router(std::string id, double delay_s, FailureModel failure = {}) {
    NodeSpec n;
    n.id = std::move(id);
    n.kind = NodeKind::router;
    n.router_delay = delay_s;
    n.failure = failure;
    return n;
}

inline LinkSpec link(std::string a, std::string b, double bw, double dist, Medium m = Medium::fiber) {
    return {std::move(a), std::move(b), bw, dist, m};
}

inline FailureModel bernoulli(double p) {
    FailureModel f;
    f.mode = FailureMode::bernoulli;
    f.failure_probability = p;
    return f;
}

inline FailureModel alternating(double up, double down) {
    FailureModel f;
    f.mode = FailureMode::alternating;
    f.up_duration = up;
    f.down_duration = down;
    return f;
}

inline FailureModel always_failed() {
    FailureModel f;
    f.mode = FailureMode::always_failed;
    return f;
}

/// Engine world from a graph; every non-router gets a clock with the given
/// parameters (perfect unless listed).
inline World make_world(NetworkGraph graph, std::map<std::string, ClockParameters> params = {},
                        std::uint64_t seed = 1, std::vector<AttackSpec> attacks = {}) {
    World w;
    w.seed = seed;
    w.attacks = std::move(attacks);
    for (const auto& n : graph.nodes()) {
        if (n.is_router()) continue;
        auto it = params.find(n.id);
        w.clocks.emplace(n.id, SoftwareClock(n.id, it == params.end() ? ClockParameters{} : it->second, seed));
    }
    w.graph = std::move(graph);
    return w;
}

inline ClockParameters offset_clock(double alpha0) {
    ClockParameters p;
    p.alpha0 = alpha0;
    return p;
}

inline AttackSpec attack_window(AttackKind kind, std::string target, double a, double b) {
    AttackSpec s;
    s.kind = kind;
    s.target = std::move(target);
    s.window_start = to_picos(a);
    s.window_end = to_picos(b);
    return s;
}

// ------------------------------------------------------------ oracles

/// Per-edge cost computed from first principles: rounded transmission plus
/// rounded propagation plus the downstream router's delay, or nothing when
/// that router is down.
inline std::optional<SimTime> oracle_edge(const NetworkView& view, const LinkSpec& l, std::size_t downstream,
                                          double bits) {
    const auto& node = view.graph().node(downstream);
    const double speed = medium_speed(l.medium, view.speeds());
    SimTime w = static_cast<SimTime>(std::nearbyint(bits / l.bandwidth * 1e12)) +
                static_cast<SimTime>(std::nearbyint(l.distance / speed * 1e12));
    if (node.is_router()) {
        if (!view.state(downstream).active) return std::nullopt;
        w += view.state(downstream).delay;
    }
    return w;
}

struct OraclePath {
    SimTime cost = 0;
    std::vector<std::string> hops;
};

/// Exhaustive simple-path enumeration. Returns the best path under (cost,
/// hop count, id sequence), or nothing when every path is blocked.
inline std::optional<OraclePath> brute_force_route(const NetworkView& view, const std::string& src,
                                                   const std::string& dst, double bits) {
    const auto& g = view.graph();
    std::optional<OraclePath> best;
    std::vector<std::string> stack{src};
    std::vector<bool> used(g.nodes().size(), false);
    const auto s = *g.index_of(src);
    used[s] = true;
    // a failed router cannot originate traffic either
    if (g.node(s).is_router() && !view.state(s).active) return std::nullopt;

    auto better = [](const OraclePath& a, const OraclePath& b) {
        if (a.cost != b.cost) return a.cost < b.cost;
        if (a.hops.size() != b.hops.size()) return a.hops.size() < b.hops.size();
        return a.hops < b.hops;
    };

    std::function<void(std::size_t, SimTime)> dfs = [&](std::size_t u, SimTime cost) {
        if (g.node(u).id == dst) {
            OraclePath p{cost, stack};
            if (!best || better(p, *best)) best = p;
            return;
        }
        for (std::size_t li = 0; li < g.links().size(); ++li) {
            const auto& l = g.link(li);
            std::optional<std::size_t> v;
            if (l.a == g.node(u).id) v = g.index_of(l.b);
            else if (l.b == g.node(u).id) v = g.index_of(l.a);
            if (!v || used[*v]) continue;
            auto w = oracle_edge(view, l, *v, bits);
            if (!w) continue;
            used[*v] = true;
            stack.push_back(g.node(*v).id);
            dfs(*v, cost + *w);
            stack.pop_back();
            used[*v] = false;
        }
    };
    dfs(s, 0);
    return best;
}

/// Random connected graph: a random spanning tree plus extra links, up to
/// `max_links` in total, no duplicates. About half the nodes are routers with
/// random delays and failure models.
inline NetworkGraph random_graph(std::mt19937_64& rng, std::size_t max_nodes = 10, std::size_t max_links = 20) {
    std::uniform_int_distribution<std::size_t> n_dist(2, max_nodes);
    const std::size_t n = n_dist(rng);
    NetworkGraph g;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string id = "n" + std::to_string(i);
        if (u01(rng) < 0.5) {
            FailureModel f;
            const double pick = u01(rng);
            if (pick < 0.3) f = bernoulli(0.3);
            else if (pick < 0.4) f = always_failed();
            // small integer-microsecond delays make exact ties common
            g.add_node(router(id, static_cast<double>(1 + rng() % 5) * 10e-6, f));
        } else {
            g.add_node(client(id));
        }
    }
    const Medium media[] = {Medium::fiber, Medium::copper, Medium::wireless, Medium::satellite};
    auto random_link = [&](std::size_t a, std::size_t b) {
        const double bw = std::vector<double>{1e6, 1e8, 1e9, 1e10}[rng() % 4];
        const double dist = static_cast<double>(rng() % 4) * 1000.0;
        return link("n" + std::to_string(a), "n" + std::to_string(b), bw, dist, media[rng() % 4]);
    };
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t parent = rng() % i;
        pairs.emplace_back(parent, i);
        g.add_link(random_link(parent, i));
    }
    std::uniform_int_distribution<std::size_t> extra_dist(0, max_links - (n - 1));
    std::size_t extra = extra_dist(rng);
    for (std::size_t tries = 0; extra > 0 && tries < 200; ++tries) {
        std::size_t a = rng() % n;
        std::size_t b = rng() % n;
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (std::find(pairs.begin(), pairs.end(), std::make_pair(a, b)) != pairs.end()) continue;
        pairs.emplace_back(a, b);
        g.add_link(random_link(a, b));
        --extra;
    }
    return g;
}

}  // namespace testing
