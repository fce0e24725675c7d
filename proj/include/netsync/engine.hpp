#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "netsync/attacks.hpp"
#include "netsync/clock.hpp"
#include "netsync/network.hpp"
#include "netsync/routing.hpp"
#include "netsync/topology.hpp"
#include "netsync/trace.hpp"

namespace netsync {

enum class MessageStatus { pending, in_flight, delivered, dropped, blocked };

std::string_view to_string(MessageStatus s);

struct Message {
    std::uint64_t id = 0;
    std::string source;
    std::string destination;
    double size_bits = 0.0;
    SimTime send_time = 0;
    SimTime delivery_time = -1;
    MessageStatus status = MessageStatus::pending;
    std::optional<Route> route;
    std::vector<AttackNote> attacks;

    bool terminated() const noexcept {
        return status == MessageStatus::delivered || status == MessageStatus::dropped ||
               status == MessageStatus::blocked;
    }
};

class Engine;

/// Callbacks run inside the event that resolves a message. The record is the
/// trace record of that event and may be annotated.
struct MessageHandlers {
    std::function<void(Engine&, const Message&, TraceRecord&)> on_delivered;
    std::function<void(Engine&, const Message&, TraceRecord&)> on_lost;
};

/// Everything a run needs besides its event queue.
struct World {
    NetworkGraph graph;
    MediumSpeeds speeds;
    std::uint64_t seed = 0;
    std::vector<AttackSpec> attacks;
    std::map<std::string, SoftwareClock> clocks;  // by node id
    bool trace_attack_edges = false;
};

/// Single-threaded discrete-event core. Events run in (time, sequence) order;
/// every executed event appends exactly one trace record.
class Engine {
public:
    using Action = std::function<void(Engine&, TraceRecord&)>;

    explicit Engine(World world);

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    SimTime now() const noexcept { return now_; }

    /// Enqueue an action. `record` pre-fills the trace record. Throws
    /// SchedulingError if time < now().
    void schedule(SimTime time, EventKind kind, Action action, TraceRecord record = {});

    /// Execute every event with time <= t_end, then advance to t_end.
    const std::vector<TraceRecord>& run_until(SimTime t_end);
    /// Execute everything still queued.
    const std::vector<TraceRecord>& drain();

    bool idle() const noexcept { return queue_.empty(); }
    const std::vector<TraceRecord>& trace() const noexcept { return trace_; }

    /// Route at send time `t`, then schedule hop arrivals and the final
    /// delivery. A message without a route ends blocked; a DDoS drop ends it
    /// at the dropping router. Either way `on_lost` runs.
    std::uint64_t send_message(const std::string& source, const std::string& destination, double size_bits, SimTime t,
                               MessageHandlers handlers = {}, std::vector<AttackNote> notes = {});

    const Message& message(std::uint64_t id) const { return messages_.at(id - 1); }
    const std::vector<Message>& messages() const noexcept { return messages_; }

    const World& world() const noexcept { return world_; }
    NetworkContext network() const;

    bool has_clock(const std::string& node) const { return world_.clocks.count(node) != 0; }
    SoftwareClock& clock(const std::string& node);
    const SoftwareClock& clock(const std::string& node) const;

    /// Attack-free round trip between two nodes at time t, if both legs route.
    std::optional<SimTime> baseline_rtt(const std::string& a, const std::string& b, SimTime t, double size_bits) const;

    std::uint64_t next_sync_id() noexcept { return ++sync_counter_; }

private:
    struct Event {
        SimTime time;
        std::uint64_t sequence;
        EventKind kind;
        Action action;
        TraceRecord record;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            return a.time != b.time ? a.time > b.time : a.sequence > b.sequence;
        }
    };

    void execute_next();
    void dispatch(std::uint64_t id, MessageHandlers handlers, TraceRecord& rec);

    World world_;
    SimTime now_ = 0;
    std::uint64_t sequence_ = 0;
    std::uint64_t sync_counter_ = 0;
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::vector<TraceRecord> trace_;
    std::vector<Message> messages_;
};

}  // namespace netsync
