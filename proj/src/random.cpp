#include "netsync/random.hpp"

#include <cmath>
#include <numbers>

namespace netsync {

std::uint64_t mix64(std::uint64_t x) noexcept {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_id(std::string_view id) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : id) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(h);
}

std::uint64_t combine(std::uint64_t key, std::uint64_t word) noexcept {
    return mix64(key ^ mix64(word + 0x632be59bd9b4e019ULL));
}

std::uint64_t StreamKey::bits(std::uint64_t lane) const noexcept {
    std::uint64_t k = mix64(seed);
    k = combine(k, static_cast<std::uint64_t>(tag));
    k = combine(k, entity);
    k = combine(k, counter);
    return combine(k, lane);
}

double uniform01(const StreamKey& key, std::uint64_t lane) noexcept {
    return static_cast<double>(key.bits(lane) >> 11) * 0x1.0p-53;
}

double standard_normal(const StreamKey& key) noexcept {
    // u1 in (0, 1] keeps the log finite
    const double u1 = 1.0 - uniform01(key, 0);
    const double u2 = uniform01(key, 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace netsync
