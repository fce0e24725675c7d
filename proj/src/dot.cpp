#include "netsync/dot.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "netsync/network.hpp"
#include "netsync/simulation.hpp"

namespace netsync {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

}  // namespace

std::string export_graph(const Scenario& scenario, SimTime t, std::uint64_t seed) {
    return export_graph(scenario, build_clocks(scenario, seed), t, seed);
}

std::string export_graph(const Scenario& scenario, const std::map<std::string, SoftwareClock>& clocks, SimTime t,
                         std::uint64_t seed) {
    const auto& g = scenario.topology;
    // epoch 0 is never a message id: a neutral bernoulli sample for snapshots
    const NetworkView view(g, scenario.speeds, seed, t, 0, scenario.attacks);

    std::vector<std::size_t> order(g.nodes().size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.node(a).id < g.node(b).id; });

    std::ostringstream out;
    out << "digraph " << quoted(scenario.config.name.empty() ? "network" : scenario.config.name) << " {\n";
    out << "  label=" << quoted("t = " + fmt("%.12g", to_seconds(t)) + " s") << ";\n";
    for (std::size_t i : order) {
        const auto& n = g.node(i);
        std::string label = n.id + "\\n" + std::string(to_string(n.kind));
        std::string attrs;
        if (n.is_router()) {
            label += " (" + std::string(to_string(n.router_kind)) + ")\\ndelay=" +
                     fmt("%.9g", to_seconds(view.state(i).delay)) + " s";
            attrs = ", shape=diamond";
            if (!view.active(i)) {
                attrs += ", style=dashed, color=red, fontcolor=red";
                label += "\\ninactive";
            } else if (!view.attacks_on(i).empty()) {
                attrs += ", style=bold, color=orange";
                label += "\\nunder attack";
            }
        } else {
            auto it = clocks.find(n.id);
            if (it != clocks.end()) label += "\\noffset=" + fmt("%+.12f", to_seconds(it->second.offset_ps(t))) + " s";
            attrs = n.kind == NodeKind::time_server ? ", shape=doubleoctagon" : ", shape=ellipse";
        }
        out << "  " << quoted(n.id) << " [label=\"" << label << "\"" << attrs << "];\n";
    }

    std::vector<const LinkSpec*> links;
    for (const auto& l : g.links()) links.push_back(&l);
    std::sort(links.begin(), links.end(), [](const LinkSpec* a, const LinkSpec* b) {
        return std::minmax(a->a, a->b) < std::minmax(b->a, b->b);
    });
    for (const auto* l : links) {
        out << "  " << quoted(l->a) << " -> " << quoted(l->b) << " [dir=none, label=\"" << fmt("%.6g", l->bandwidth)
            << " bps\\n" << fmt("%.6g", l->distance) << " m\\n" << to_string(l->medium) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace netsync
