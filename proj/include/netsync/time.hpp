#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace netsync {

/// Simulated wall-clock time and durations, in integer picoseconds.
using SimTime = std::int64_t;

inline constexpr SimTime kPicosPerSecond = 1'000'000'000'000;
inline constexpr SimTime kPicosPerNano = 1'000;
inline constexpr SimTime kTimeMax = std::numeric_limits<SimTime>::max();

/// Seconds to picoseconds, rounding half to even.
inline SimTime to_picos(double seconds) {
    // nearbyint honours the default FE_TONEAREST mode (ties to even).
    return static_cast<SimTime>(std::nearbyint(seconds * 1e12));
}

inline double to_seconds(SimTime picos) { return static_cast<double>(picos) * 1e-12; }

inline double to_nanos(SimTime picos) { return static_cast<double>(picos) * 1e-3; }

/// floor(a / b) for b > 0.
inline constexpr SimTime floor_div(SimTime a, SimTime b) {
    SimTime q = a / b;
    if ((a % b != 0) && (a < 0)) --q;
    return q;
}

}  // namespace netsync
