#include "netsync/network.hpp"

namespace netsync {

NetworkView NetworkContext::view(SimTime time, std::uint64_t message_id) const {
    return NetworkView(*graph, speeds, seed, time, message_id, attacks);
}

NetworkView NetworkContext::baseline_view(SimTime time, std::uint64_t message_id) const {
    return NetworkView(*graph, speeds, seed, time, message_id, {});
}

NetworkView::NetworkView(const NetworkGraph& graph, const MediumSpeeds& speeds, std::uint64_t seed, SimTime time,
                         std::uint64_t message_id, std::span<const AttackSpec> attacks)
    : graph_(&graph), speeds_(speeds), seed_(seed), time_(time), message_id_(message_id), attacks_(attacks) {
    const auto& nodes = graph.nodes();
    states_.resize(nodes.size());
    applied_.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        if (!n.is_router()) continue;
        states_[i].active = router_flag(n, {time, seed, message_id}) == 1;
        states_[i].delay = n.router_delay_ps();
    }
    for (std::size_t a = 0; a < attacks.size(); ++a) {
        const auto& spec = attacks[a];
        if (!spec.active_at(time) || spec.kind == AttackKind::ip_spoof) continue;
        auto idx = graph.index_of(spec.target);
        if (!idx || !nodes[*idx].is_router()) continue;
        if (spec.kind == AttackKind::ddos) {
            states_[*idx] = apply_ddos(spec, states_[*idx]);
        } else {
            states_[*idx] = apply_router_hijack(spec, states_[*idx]);
        }
        applied_[*idx].push_back(a);
    }
}

}  // namespace netsync
