#include "netsync/engine.hpp"

#include <algorithm>

#include "netsync/errors.hpp"

namespace netsync {

std::string_view to_string(MessageStatus s) {
    switch (s) {
        case MessageStatus::pending: return "pending";
        case MessageStatus::in_flight: return "in_flight";
        case MessageStatus::delivered: return "delivered";
        case MessageStatus::dropped: return "dropped";
        case MessageStatus::blocked: return "blocked";
    }
    return "pending";
}

Engine::Engine(World world) : world_(std::move(world)) {
    if (!world_.trace_attack_edges) return;
    for (const auto& a : world_.attacks) {
        for (auto [t, status] : {std::pair{a.window_start, "start"}, std::pair{a.window_end, "end"}}) {
            if (t < 0) continue;
            TraceRecord rec;
            rec.node = a.target;
            rec.status = status;
            rec.attacks.push_back(note_for(a));
            schedule(t, EventKind::attack_edge, nullptr, std::move(rec));
        }
    }
}

void Engine::schedule(SimTime time, EventKind kind, Action action, TraceRecord record) {
    if (time < now_) {
        throw SchedulingError("event at " + std::to_string(time) + " ps scheduled before now (" +
                              std::to_string(now_) + " ps)");
    }
    queue_.push(Event{time, sequence_++, kind, std::move(action), std::move(record)});
}

void Engine::execute_next() {
    Event ev = queue_.top();
    queue_.pop();
    now_ = ev.time;
    TraceRecord rec = std::move(ev.record);
    rec.time = ev.time;
    rec.sequence = ev.sequence;
    rec.kind = ev.kind;
    if (ev.action) ev.action(*this, rec);
    trace_.push_back(std::move(rec));
}

const std::vector<TraceRecord>& Engine::run_until(SimTime t_end) {
    if (t_end < now_) throw SchedulingError("run_until target precedes current time");
    while (!queue_.empty() && queue_.top().time <= t_end) execute_next();
    now_ = t_end;
    return trace_;
}

const std::vector<TraceRecord>& Engine::drain() {
    while (!queue_.empty()) execute_next();
    return trace_;
}

NetworkContext Engine::network() const {
    return NetworkContext{&world_.graph, world_.speeds, world_.seed, world_.attacks};
}

SoftwareClock& Engine::clock(const std::string& node) {
    auto it = world_.clocks.find(node);
    if (it == world_.clocks.end()) throw DomainError("node '" + node + "' has no clock");
    return it->second;
}

const SoftwareClock& Engine::clock(const std::string& node) const {
    return const_cast<Engine*>(this)->clock(node);
}

std::optional<SimTime> Engine::baseline_rtt(const std::string& a, const std::string& b, SimTime t,
                                            double size_bits) const {
    const auto net = network();
    try {
        // message id 0 is never assigned, so this samples a neutral epoch
        const auto fwd = shortest_path(net.baseline_view(t, 0), a, b, size_bits);
        const auto back = shortest_path(net.baseline_view(t, 0), b, a, size_bits);
        return fwd.breakdown.total + back.breakdown.total;
    } catch (const NoRoute&) {
        return std::nullopt;
    }
}

std::uint64_t Engine::send_message(const std::string& source, const std::string& destination, double size_bits,
                                   SimTime t, MessageHandlers handlers, std::vector<AttackNote> notes) {
    Message m;
    m.id = messages_.size() + 1;
    m.source = source;
    m.destination = destination;
    m.size_bits = size_bits;
    m.send_time = t;
    m.attacks = std::move(notes);
    messages_.push_back(std::move(m));
    const std::uint64_t id = messages_.back().id;

    TraceRecord rec;
    rec.message_id = id;
    rec.node = source;
    rec.peer = destination;
    schedule(t, EventKind::message_send,
             [id, handlers = std::move(handlers)](Engine& e, TraceRecord& r) { e.dispatch(id, handlers, r); },
             std::move(rec));
    return id;
}

void Engine::dispatch(std::uint64_t id, MessageHandlers handlers, TraceRecord& rec) {
    Message& msg = messages_.at(id - 1);
    const auto view = network().view(now_, id);
    rec.attacks = msg.attacks;

    Route route;
    try {
        route = shortest_path(view, msg.source, msg.destination, msg.size_bits);
    } catch (const NoRoute&) {
        msg.status = MessageStatus::blocked;
        rec.status = "blocked";
        if (handlers.on_lost) handlers.on_lost(*this, Message(msg), rec);
        return;
    }

    for (std::size_t node : route.nodes) {
        for (std::size_t a : view.attacks_on(node)) {
            const auto note = note_for(world_.attacks[a]);
            msg.attacks.push_back(note);
            rec.attacks.push_back(note);
        }
    }

    // earliest DDoS drop along the route
    std::optional<std::size_t> drop_hop;
    std::optional<AttackNote> drop_note;
    for (std::size_t a = 0; a < world_.attacks.size(); ++a) {
        const auto& spec = world_.attacks[a];
        if (spec.kind != AttackKind::ddos || !spec.active_at(now_)) continue;
        auto it = std::find(route.hops.begin(), route.hops.end(), spec.target);
        if (it == route.hops.end()) continue;
        if (!ddos_drops(spec, world_.seed, a, id)) continue;
        const auto hop = static_cast<std::size_t>(it - route.hops.begin());
        if (!drop_hop || hop < *drop_hop) {
            drop_hop = hop;
            drop_note = note_for(spec);
        }
    }

    const auto& bd = route.breakdown;
    rec.route = route.hops;
    rec.delay = DelayFields{bd.router_total, bd.transmission_total, bd.propagation_total, bd.total};
    msg.route = route;
    msg.status = MessageStatus::in_flight;
    rec.status = "in_flight";

    if (drop_hop && *drop_hop == 0) {
        msg.status = MessageStatus::dropped;
        rec.status = "dropped";
        rec.attacks.push_back(*drop_note);
        if (handlers.on_lost) handlers.on_lost(*this, Message(msg), rec);
        return;
    }

    const std::size_t last = route.nodes.size() - 1;
    SimTime elapsed = 0;
    auto per_hop = bd.per_hop.begin();
    for (std::size_t k = 1; k <= last; ++k) {
        SimTime link_time = 0;
        SimTime router_time = 0;
        for (; per_hop != bd.per_hop.end() && per_hop->hop == k; ++per_hop) {
            (per_hop->component == DelayComponent::router ? router_time : link_time) += per_hop->delay;
        }
        const SimTime arrival = now_ + elapsed + link_time;
        elapsed += link_time + router_time;

        const bool dropped_here = drop_hop && *drop_hop == k;
        if (k == last && !dropped_here) break;

        TraceRecord hop;
        hop.message_id = id;
        hop.node = route.hops[k];
        hop.peer = msg.destination;
        hop.status = dropped_here ? "dropped" : "forwarded";
        if (dropped_here) {
            hop.attacks.push_back(*drop_note);
            schedule(arrival, EventKind::hop_arrival,
                     [id, handlers](Engine& e, TraceRecord& r) {
                         Message& m = e.messages_.at(id - 1);
                         m.status = MessageStatus::dropped;
                         if (handlers.on_lost) handlers.on_lost(e, Message(m), r);
                     },
                     std::move(hop));
            return;
        }
        schedule(arrival, EventKind::hop_arrival, nullptr, std::move(hop));
    }

    TraceRecord done;
    done.message_id = id;
    done.node = msg.destination;
    done.peer = msg.source;
    done.status = "delivered";
    schedule(now_ + bd.total, EventKind::delivery,
             [id, handlers](Engine& e, TraceRecord& r) {
                 Message& m = e.messages_.at(id - 1);
                 m.status = MessageStatus::delivered;
                 m.delivery_time = e.now();
                 if (handlers.on_delivered) handlers.on_delivered(e, Message(m), r);
             },
             std::move(done));
}

}  // namespace netsync
