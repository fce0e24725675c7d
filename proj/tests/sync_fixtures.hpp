#pragma once

// Small worlds for exercising the sync algorithms.

#include <map>
#include <string>
#include <vector>

#include "support.hpp"

namespace testing {

/// client -- r -- server with a single router whose delay dominates; link
/// terms are zero so each one-way delay equals the router delay.
inline NetworkGraph cristian_line(double router_delay_s) {
    NetworkGraph g;
    g.add_node(client("client"));
    g.add_node(router("r", router_delay_s));
    g.add_node(server("server"));
    g.add_link(link("client", "r", 1e300, 0));
    g.add_link(link("r", "server", 1e300, 0));
    return g;
}

/// Added-delay hijacks of router r: `forward_extra` during the request
/// (sent at `at`), `backward_extra` for anything sent after it.
inline std::vector<AttackSpec> asymmetry(double at, double forward_extra, double backward_extra) {
    std::vector<AttackSpec> out;
    if (forward_extra != 0.0) {
        auto f = attack_window(AttackKind::router_hijack, "r", at, at);
        f.hijack_mode = HijackMode::added_delay;
        f.added_delay = forward_extra;
        out.push_back(f);
    }
    if (backward_extra != 0.0) {
        auto b = attack_window(AttackKind::router_hijack, "r", 0, 1e6);
        b.window_start = to_picos(at) + 1;
        b.hijack_mode = HijackMode::added_delay;
        b.added_delay = backward_extra;
        out.push_back(b);
    }
    return out;
}

/// Coordinator and members hanging off one router by identical links.
inline NetworkGraph star(const std::vector<std::string>& leaves) {
    NetworkGraph g;
    g.add_node(router("hub", 50e-6));
    for (const auto& id : leaves) {
        g.add_node(client(id));
        g.add_link(link(id, "hub", 1e9, 20e3));
    }
    return g;
}

}  // namespace testing
