#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "netsync/attacks.hpp"
#include "netsync/topology.hpp"

namespace netsync {

class NetworkView;

/// Everything routing and delay evaluation depend on besides the query: the
/// graph, medium speeds, run seed and attack list. Non-owning.
struct NetworkContext {
    const NetworkGraph* graph = nullptr;
    MediumSpeeds speeds;
    std::uint64_t seed = 0;
    std::span<const AttackSpec> attacks;

    /// Router states at `time` as sampled for one message traversal.
    NetworkView view(SimTime time, std::uint64_t message_id) const;
    /// Same, ignoring every attack.
    NetworkView baseline_view(SimTime time, std::uint64_t message_id) const;
};

/// Snapshot of the network for one traversal: router activity flags and
/// effective delays with active attacks folded in.
class NetworkView {
public:
    NetworkView(const NetworkGraph& graph, const MediumSpeeds& speeds, std::uint64_t seed, SimTime time,
                std::uint64_t message_id, std::span<const AttackSpec> attacks = {});

    const NetworkGraph& graph() const noexcept { return *graph_; }
    const MediumSpeeds& speeds() const noexcept { return speeds_; }
    SimTime time() const noexcept { return time_; }
    std::uint64_t message_id() const noexcept { return message_id_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::span<const AttackSpec> attacks() const noexcept { return attacks_; }

    /// Non-router nodes are always active with zero delay.
    const RouterState& state(std::size_t node) const { return states_.at(node); }
    bool active(std::size_t node) const { return states_.at(node).active; }

    /// Attacks (by index into attacks()) that modified this node's state.
    const std::vector<std::size_t>& attacks_on(std::size_t node) const { return applied_.at(node); }

private:
    const NetworkGraph* graph_;
    MediumSpeeds speeds_;
    std::uint64_t seed_;
    SimTime time_;
    std::uint64_t message_id_;
    std::span<const AttackSpec> attacks_;
    std::vector<RouterState> states_;
    std::vector<std::vector<std::size_t>> applied_;
};

}  // namespace netsync
