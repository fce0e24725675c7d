#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "netsync/time.hpp"

namespace netsync {

enum class AttackKind { ddos, ip_spoof, router_hijack };
enum class HijackMode { force_down, added_delay };

std::string_view to_string(AttackKind k);
std::string_view to_string(HijackMode m);
AttackKind attack_kind_from_string(std::string_view s);
HijackMode hijack_mode_from_string(std::string_view s);

/// A time-windowed attack. The window [window_start, window_end] is closed;
/// outside it an attack has no effect at all.
struct AttackSpec {
    AttackKind kind = AttackKind::ddos;
    std::string target;
    SimTime window_start = 0;
    SimTime window_end = 0;

    // ddos
    double delay_multiplier = 1.0;
    double drop_probability = 0.0;
    // ip_spoof
    double forged_offset = 0.0;  // seconds
    // router_hijack
    HijackMode hijack_mode = HijackMode::force_down;
    double added_delay = 0.0;  // seconds

    bool active_at(SimTime t) const noexcept { return window_start <= t && t <= window_end; }

    bool operator==(const AttackSpec&) const = default;
};

/// Marker left on trace records wherever an attack changed behavior.
struct AttackNote {
    std::string kind;
    std::string target;

    bool operator==(const AttackNote&) const = default;
};

AttackNote note_for(const AttackSpec& spec);

/// Effective state of one router as seen by a single message.
struct RouterState {
    bool active = true;
    SimTime delay = 0;
};

/// Scales the router's delay by the multiplier.
RouterState apply_ddos(const AttackSpec& spec, RouterState state);

/// Whether a DDoS attack drops the given message. Deterministic in
/// (seed, attack index, message id).
bool ddos_drops(const AttackSpec& spec, std::uint64_t seed, std::size_t attack_index, std::uint64_t message_id);

/// Returns the (possibly forged) server timestamp a victim receives.
SimTime apply_ip_spoof(const AttackSpec& spec, SimTime server_timestamp);

/// force_down clears the activity flag; added_delay lengthens the router delay.
RouterState apply_router_hijack(const AttackSpec& spec, RouterState state);

}  // namespace netsync
