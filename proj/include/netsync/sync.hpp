#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netsync/clock.hpp"
#include "netsync/engine.hpp"

namespace netsync {

enum class SyncAlgorithm { cristian, berkeley };

std::string_view to_string(SyncAlgorithm a);
SyncAlgorithm sync_algorithm_from_string(std::string_view s);

/// One request/reply exchange as seen by the requesting node, plus the true
/// one-way delays (simulator-only ground truth).
struct SyncExchange {
    std::string peer;
    SimTime t0_client = 0;
    SimTime t_server = 0;
    SimTime t1_client = 0;
    SimTime rtt = 0;
    SimTime forward_delay = 0;
    SimTime backward_delay = 0;
};

/// Outcome of one sync. clock_errors are signed (node clock minus reference
/// clock) and residuals are their magnitudes. Cristian's reference is the
/// server clock; Berkeley's is the ensemble time the coordinator computed.
struct SyncReport {
    std::uint64_t sync_id = 0;
    SyncAlgorithm algorithm = SyncAlgorithm::cristian;
    SimTime start = 0;
    bool completed = false;
    bool aborted = false;
    std::string failure;
    std::map<std::string, SimTime> corrections;
    std::map<std::string, SimTime> residuals;
    std::map<std::string, SimTime> clock_errors;
    std::vector<std::string> excluded;     // Berkeley outliers
    std::vector<std::string> unreachable;  // no reply or correction lost
    std::uint64_t messages_sent = 0;
    SimTime convergence_time = 0;
    std::optional<SimTime> mean_offset;  // Berkeley
    std::vector<SyncExchange> exchanges;

    bool ok() const noexcept { return completed && !aborted; }
};

using SyncHandle = std::shared_ptr<const SyncReport>;

struct SyncOptions {
    CorrectionPolicy policy;
    SimTime service_time = 0;  // server host delay between request and reply
    double message_bits = 12000.0;
    std::optional<SimTime> outlier_threshold;  // Berkeley; disabled when empty
    double timeout_factor = 5.0;               // multiple of attack-free RTT
    SimTime fallback_timeout = kPicosPerSecond;
};

/// Cristian's estimate of the server time at reply receipt.
inline SimTime cristian_estimate(SimTime t_server, SimTime rtt) { return t_server + floor_div(rtt, 2); }

/// Adds delta to the clock's pending correction under the given policy.
void apply_correction(SoftwareClock& clock, SimTime delta, const CorrectionPolicy& policy, SimTime now);

/// When a correction issued at `now` is fully in effect.
SimTime correction_effective_at(SimTime delta, const CorrectionPolicy& policy, SimTime now);

struct BerkeleyAverage {
    SimTime median = 0;
    SimTime mean = 0;
    std::map<std::string, SimTime> corrections;  // mean - offset, every participant
    std::vector<std::string> excluded;
};

/// Fault-tolerant averaging step: discard offsets farther than the threshold
/// from the median, average the rest, and move everyone to that average.
BerkeleyAverage berkeley_average(const std::map<std::string, SimTime>& offsets,
                                 std::optional<SimTime> outlier_threshold);

/// Schedules a Cristian exchange (client asks server) at time `at`. The
/// returned report fills in as the engine runs.
SyncHandle cristian_sync(Engine& engine, const std::string& client, const std::string& server, SimTime at,
                         const SyncOptions& options = {});

/// Schedules a Berkeley round led by `coordinator` at time `at`. The
/// coordinator always takes part with offset 0, whether listed or not.
SyncHandle berkeley_round(Engine& engine, const std::string& coordinator, const std::vector<std::string>& members,
                          SimTime at, const SyncOptions& options = {});

}  // namespace netsync
