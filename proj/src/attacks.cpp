#include "netsync/attacks.hpp"

#include <cmath>

#include "netsync/errors.hpp"
#include "netsync/random.hpp"

namespace netsync {

std::string_view to_string(AttackKind k) {
    switch (k) {
        case AttackKind::ddos: return "ddos";
        case AttackKind::ip_spoof: return "ip_spoof";
        case AttackKind::router_hijack: return "router_hijack";
    }
    return "ddos";
}

std::string_view to_string(HijackMode m) { return m == HijackMode::force_down ? "force_down" : "added_delay"; }

AttackKind attack_kind_from_string(std::string_view s) {
    if (s == "ddos") return AttackKind::ddos;
    if (s == "ip_spoof") return AttackKind::ip_spoof;
    if (s == "router_hijack") return AttackKind::router_hijack;
    throw ConfigError("unknown attack kind '" + std::string(s) + "'");
}

HijackMode hijack_mode_from_string(std::string_view s) {
    if (s == "force_down") return HijackMode::force_down;
    if (s == "added_delay") return HijackMode::added_delay;
    throw ConfigError("unknown hijack mode '" + std::string(s) + "'");
}

AttackNote note_for(const AttackSpec& spec) { return {std::string(to_string(spec.kind)), spec.target}; }

RouterState apply_ddos(const AttackSpec& spec, RouterState state) {
    state.delay = static_cast<SimTime>(std::nearbyint(static_cast<double>(state.delay) * spec.delay_multiplier));
    return state;
}

bool ddos_drops(const AttackSpec& spec, std::uint64_t seed, std::size_t attack_index, std::uint64_t message_id) {
    if (spec.drop_probability <= 0.0) return false;
    if (spec.drop_probability >= 1.0) return true;
    const std::uint64_t entity = combine(hash_id(spec.target), attack_index);
    return uniform01({seed, StreamTag::packet_drop, entity, message_id}) < spec.drop_probability;
}

SimTime apply_ip_spoof(const AttackSpec& spec, SimTime server_timestamp) {
    return server_timestamp + to_picos(spec.forged_offset);
}

RouterState apply_router_hijack(const AttackSpec& spec, RouterState state) {
    if (spec.hijack_mode == HijackMode::force_down) {
        state.active = false;
    } else {
        state.delay += to_picos(spec.added_delay);
    }
    return state;
}

}  // namespace netsync
