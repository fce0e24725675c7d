#pragma once

#include <cstdint>
#include <string_view>

namespace netsync {

// Counter-based keyed random values. Every draw is a pure function of its key,
// so independent consumers (clock noise, router failures, packet drops) never
// perturb each other's streams.

/// Stream domains; part of every key.
enum class StreamTag : std::uint64_t {
    clock_noise = 1,
    router_failure = 2,
    packet_drop = 3,
    gnss_jitter = 4,
};

std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stable 64-bit hash of an identifier (FNV-1a, then mixed).
std::uint64_t hash_id(std::string_view id) noexcept;

/// Combine a key with further words.
std::uint64_t combine(std::uint64_t key, std::uint64_t word) noexcept;

struct StreamKey {
    std::uint64_t seed = 0;
    StreamTag tag = StreamTag::clock_noise;
    std::uint64_t entity = 0;
    std::uint64_t counter = 0;

    std::uint64_t bits(std::uint64_t lane = 0) const noexcept;
};

/// Uniform on [0, 1).
double uniform01(const StreamKey& key, std::uint64_t lane = 0) noexcept;

/// Standard normal via Box-Muller on two lanes of the key.
double standard_normal(const StreamKey& key) noexcept;

}  // namespace netsync
