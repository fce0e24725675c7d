#include "netsync/sync.hpp"

#include <algorithm>
#include <cmath>

#include "netsync/errors.hpp"

namespace netsync {

std::string_view to_string(SyncAlgorithm a) { return a == SyncAlgorithm::cristian ? "cristian" : "berkeley"; }

SyncAlgorithm sync_algorithm_from_string(std::string_view s) {
    if (s == "cristian") return SyncAlgorithm::cristian;
    if (s == "berkeley") return SyncAlgorithm::berkeley;
    throw ConfigError("unknown sync algorithm '" + std::string(s) + "'");
}

void apply_correction(SoftwareClock& clock, SimTime delta, const CorrectionPolicy& policy, SimTime now) {
    clock.apply_correction(delta, policy, now);
}

SimTime correction_effective_at(SimTime delta, const CorrectionPolicy& policy, SimTime now) {
    if (policy.kind == CorrectionPolicy::Kind::step || delta == 0) return now;
    if (!(policy.slew_rate > 0.0)) throw ConfigError("slew rate must be positive");
    const double magnitude = std::abs(static_cast<double>(delta));
    return now + static_cast<SimTime>(std::ceil(magnitude / policy.slew_rate));
}

namespace {

// Mean of integers rounded to nearest, ties to even.
SimTime rounded_mean(const std::vector<SimTime>& v) {
    SimTime sum = 0;
    for (SimTime x : v) sum += x;
    const auto n = static_cast<SimTime>(v.size());
    SimTime q = floor_div(sum, n);
    const SimTime twice_rem = 2 * (sum - q * n);
    if (twice_rem > n || (twice_rem == n && (q % 2 != 0))) ++q;
    return q;
}

SimTime median_of(std::vector<SimTime> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return floor_div(v[n / 2 - 1] + v[n / 2], 2);
}

SimTime timeout_wait(const Engine& e, const std::string& a, const std::string& b, const SyncOptions& o) {
    if (auto rtt = e.baseline_rtt(a, b, e.now(), o.message_bits)) {
        return static_cast<SimTime>(std::ceil(o.timeout_factor * static_cast<double>(*rtt)));
    }
    return o.fallback_timeout;
}

SyncFields fields(const SyncReport& r, const char* phase) {
    SyncFields f;
    f.sync_id = r.sync_id;
    f.algorithm = std::string(to_string(r.algorithm));
    f.phase = phase;
    return f;
}

void fill_outcome(SyncFields& f, const SyncReport& r) {
    f.messages_sent = r.messages_sent;
    if (r.completed) f.convergence = r.convergence_time;
    f.corrections = r.corrections;
    f.residuals = r.residuals;
    f.clock_errors = r.clock_errors;
    f.excluded = r.excluded;
    f.unreachable = r.unreachable;
    f.detail = r.failure;
}

std::vector<AttackNote> forge_timestamp(const Engine& e, const std::string& victim, SimTime& timestamp) {
    std::vector<AttackNote> notes;
    for (const auto& spec : e.world().attacks) {
        if (spec.kind != AttackKind::ip_spoof || spec.target != victim || !spec.active_at(e.now())) continue;
        const SimTime forged = apply_ip_spoof(spec, timestamp);
        if (forged == timestamp) continue;
        timestamp = forged;
        notes.push_back(note_for(spec));
    }
    return notes;
}

// ---------------------------------------------------------------- Cristian

struct CristianState {
    std::shared_ptr<SyncReport> report;
    std::string client;
    std::string server;
    SyncOptions options;
    SimTime deadline = 0;
    SimTime t0 = 0;
    SimTime t_server = 0;
    std::uint64_t request_id = 0;
    std::uint64_t reply_id = 0;
};

void cristian_abort(Engine& e, const std::shared_ptr<CristianState>& st, const Message& lost) {
    TraceRecord rec;
    rec.node = st->client;
    rec.peer = st->server;
    rec.message_id = lost.id;
    rec.status = "timeout";
    const std::string cause = "message " + std::to_string(lost.id) + " " + std::string(to_string(lost.status));
    e.schedule(std::max(e.now(), st->deadline), EventKind::timeout,
               [st, cause](Engine&, TraceRecord& r) {
                   auto& rep = *st->report;
                   if (rep.completed || rep.aborted) return;
                   rep.aborted = true;
                   rep.failure = "timeout: " + cause;
                   SyncFields f = fields(rep, "aborted");
                   fill_outcome(f, rep);
                   r.sync = std::move(f);
               },
               std::move(rec));
}

void cristian_finish(Engine& e, const std::shared_ptr<CristianState>& st, const Message& reply, TraceRecord& rec) {
    auto& rep = *st->report;
    auto& client = e.clock(st->client);
    const SimTime now = e.now();
    const SimTime t1 = client.read_ps(now);
    const SimTime rtt = t1 - st->t0;
    const SimTime delta = cristian_estimate(st->t_server, rtt) - t1;
    apply_correction(client, delta, st->options.policy, now);
    const SimTime effective = correction_effective_at(delta, st->options.policy, now);
    const SimTime error = client.read_ps(effective) - e.clock(st->server).read_ps(effective);

    const Message& request = e.message(st->request_id);
    rep.exchanges.push_back({st->server, st->t0, st->t_server, t1, rtt, request.delivery_time - request.send_time,
                             reply.delivery_time - reply.send_time});
    rep.corrections[st->client] = delta;
    rep.clock_errors[st->client] = error;
    rep.residuals[st->client] = error < 0 ? -error : error;
    rep.convergence_time = effective - rep.start;
    rep.completed = true;

    rec.clocks[st->client] = t1;
    SyncFields f = fields(rep, "complete");
    fill_outcome(f, rep);
    rec.sync = std::move(f);
}

void cristian_reply(Engine& e, const std::shared_ptr<CristianState>& st, TraceRecord& rec) {
    SimTime stamp = e.clock(st->server).read_ps(e.now());
    rec.clocks[st->server] = stamp;
    auto notes = forge_timestamp(e, st->client, stamp);
    st->t_server = stamp;
    ++st->report->messages_sent;
    MessageHandlers h;
    h.on_delivered = [st](Engine& en, const Message& m, TraceRecord& r) { cristian_finish(en, st, m, r); };
    h.on_lost = [st](Engine& en, const Message& m, TraceRecord&) { cristian_abort(en, st, m); };
    st->reply_id = e.send_message(st->server, st->client, st->options.message_bits, e.now(), std::move(h), std::move(notes));
}

}  // namespace

SyncHandle cristian_sync(Engine& engine, const std::string& client, const std::string& server, SimTime at,
                         const SyncOptions& options) {
    auto st = std::make_shared<CristianState>();
    st->report = std::make_shared<SyncReport>();
    st->report->sync_id = engine.next_sync_id();
    st->report->algorithm = SyncAlgorithm::cristian;
    st->report->start = at;
    st->client = client;
    st->server = server;
    st->options = options;

    TraceRecord rec;
    rec.node = client;
    rec.peer = server;
    rec.status = "start";
    engine.schedule(at, EventKind::sync_step,
                    [st](Engine& e, TraceRecord& r) {
                        st->deadline = e.now() + timeout_wait(e, st->client, st->server, st->options);
                        st->t0 = e.clock(st->client).read_ps(e.now());
                        r.clocks[st->client] = st->t0;
                        r.sync = fields(*st->report, "start");
                        ++st->report->messages_sent;
                        MessageHandlers h;
                        h.on_delivered = [st](Engine& en, const Message&, TraceRecord& dr) {
                            if (st->options.service_time <= 0) {
                                dr.sync = fields(*st->report, "serve");
                                cristian_reply(en, st, dr);
                                return;
                            }
                            TraceRecord serve;
                            serve.node = st->server;
                            serve.peer = st->client;
                            serve.status = "serve";
                            en.schedule(en.now() + st->options.service_time, EventKind::sync_step,
                                        [st](Engine& en2, TraceRecord& sr) {
                                            sr.sync = fields(*st->report, "serve");
                                            cristian_reply(en2, st, sr);
                                        },
                                        std::move(serve));
                        };
                        h.on_lost = [st](Engine& en, const Message& m, TraceRecord&) { cristian_abort(en, st, m); };
                        st->request_id = e.send_message(st->client, st->server, st->options.message_bits, e.now(), std::move(h));
                    },
                    std::move(rec));
    return st->report;
}

// ---------------------------------------------------------------- Berkeley

BerkeleyAverage berkeley_average(const std::map<std::string, SimTime>& offsets,
                                 std::optional<SimTime> outlier_threshold) {
    BerkeleyAverage out;
    if (offsets.empty()) return out;
    std::vector<SimTime> all;
    for (const auto& [id, off] : offsets) all.push_back(off);
    out.median = median_of(all);

    std::vector<SimTime> kept;
    for (const auto& [id, off] : offsets) {
        const SimTime dist = off > out.median ? off - out.median : out.median - off;
        if (outlier_threshold && dist > *outlier_threshold) {
            out.excluded.push_back(id);
        } else {
            kept.push_back(off);
        }
    }
    out.mean = kept.empty() ? out.median : rounded_mean(kept);
    for (const auto& [id, off] : offsets) out.corrections[id] = out.mean - off;
    return out;
}

namespace {

struct BerkeleyState {
    std::shared_ptr<SyncReport> report;
    std::string coordinator;
    std::vector<std::string> members;
    SyncOptions options;
    std::map<std::string, SimTime> deadline;
    std::map<std::string, std::uint64_t> poll_id;
    SimTime t0 = 0;
    std::map<std::string, SimTime> offsets;
    std::size_t resolved = 0;
    std::size_t pending_corrections = 0;
    std::optional<SoftwareClock> coordinator_before;
    SimTime last_effective = 0;
};

void berkeley_finish(Engine& e, const std::shared_ptr<BerkeleyState>& st, TraceRecord& rec) {
    auto& rep = *st->report;
    const SimTime when = std::max(e.now(), st->last_effective);
    const SimTime reference = st->coordinator_before->read_ps(when) + *rep.mean_offset;
    for (const auto& [id, off] : st->offsets) {
        if (std::find(rep.unreachable.begin(), rep.unreachable.end(), id) != rep.unreachable.end()) continue;
        const SimTime err = e.clock(id).read_ps(when) - reference;
        rep.clock_errors[id] = err;
        rep.residuals[id] = err < 0 ? -err : err;
    }
    rep.convergence_time = st->last_effective - rep.start;
    rep.completed = true;
    SyncFields f = fields(rep, "complete");
    fill_outcome(f, rep);
    rec.sync = std::move(f);
}

void berkeley_correction_resolved(Engine& e, const std::shared_ptr<BerkeleyState>& st, TraceRecord& rec) {
    if (--st->pending_corrections == 0) berkeley_finish(e, st, rec);
}

void berkeley_compute(Engine& e, const std::shared_ptr<BerkeleyState>& st, TraceRecord& rec) {
    auto& rep = *st->report;
    std::sort(rep.unreachable.begin(), rep.unreachable.end());
    if (st->offsets.size() < 2) {
        rep.aborted = true;
        rep.failure = "fewer than 2 reachable participants";
        SyncFields f = fields(rep, "aborted");
        fill_outcome(f, rep);
        rec.sync = std::move(f);
        return;
    }
    const auto avg = berkeley_average(st->offsets, st->options.outlier_threshold);
    rep.mean_offset = avg.mean;
    rep.excluded = avg.excluded;
    rep.corrections = avg.corrections;

    auto& coord = e.clock(st->coordinator);
    st->coordinator_before = coord;
    const SimTime own = avg.corrections.at(st->coordinator);
    apply_correction(coord, own, st->options.policy, e.now());
    st->last_effective = correction_effective_at(own, st->options.policy, e.now());

    for (const auto& [id, delta] : avg.corrections) {
        if (id == st->coordinator) continue;
        ++st->pending_corrections;
        ++rep.messages_sent;
        MessageHandlers h;
        h.on_delivered = [st, id = id, delta = delta](Engine& en, const Message&, TraceRecord& r) {
            apply_correction(en.clock(id), delta, st->options.policy, en.now());
            st->last_effective = std::max(st->last_effective, correction_effective_at(delta, st->options.policy, en.now()));
            r.clocks[id] = en.clock(id).read_ps(en.now());
            berkeley_correction_resolved(en, st, r);
        };
        h.on_lost = [st, id = id](Engine& en, const Message&, TraceRecord& r) {
            st->report->unreachable.push_back(id);
            berkeley_correction_resolved(en, st, r);
        };
        e.send_message(st->coordinator, id, st->options.message_bits, e.now(), std::move(h));
    }
    SyncFields f = fields(rep, "estimate");
    f.corrections = rep.corrections;
    f.excluded = rep.excluded;
    f.unreachable = rep.unreachable;
    rec.sync = std::move(f);
}

void berkeley_resolved(Engine& e, const std::shared_ptr<BerkeleyState>& st, TraceRecord& rec) {
    if (++st->resolved == st->members.size()) berkeley_compute(e, st, rec);
}

void berkeley_lost(Engine& e, const std::shared_ptr<BerkeleyState>& st, const std::string& member, const Message& lost) {
    TraceRecord rec;
    rec.node = st->coordinator;
    rec.peer = member;
    rec.message_id = lost.id;
    rec.status = "timeout";
    e.schedule(std::max(e.now(), st->deadline.at(member)), EventKind::timeout,
               [st, member](Engine& en, TraceRecord& r) {
                   st->report->unreachable.push_back(member);
                   berkeley_resolved(en, st, r);
               },
               std::move(rec));
}

void berkeley_estimate(Engine& e, const std::shared_ptr<BerkeleyState>& st, const std::string& member,
                       SimTime reading, const Message& reply, TraceRecord& rec) {
    const SimTime t1 = e.clock(st->coordinator).read_ps(e.now());
    const SimTime rtt = t1 - st->t0;
    const SimTime offset = cristian_estimate(reading, rtt) - t1;
    st->offsets[member] = offset;
    const Message& poll = e.message(st->poll_id.at(member));
    st->report->exchanges.push_back({member, st->t0, reading, t1, rtt, poll.delivery_time - poll.send_time,
                                     reply.delivery_time - reply.send_time});
    rec.clocks[st->coordinator] = t1;
    berkeley_resolved(e, st, rec);
}

void berkeley_reply(Engine& e, const std::shared_ptr<BerkeleyState>& st, const std::string& member, TraceRecord& rec) {
    SimTime reading = e.clock(member).read_ps(e.now());
    rec.clocks[member] = reading;
    rec.sync = fields(*st->report, "serve");
    ++st->report->messages_sent;
    MessageHandlers h;
    h.on_delivered = [st, member, reading](Engine& en, const Message& m, TraceRecord& r) {
        berkeley_estimate(en, st, member, reading, m, r);
    };
    h.on_lost = [st, member](Engine& en, const Message& m, TraceRecord&) { berkeley_lost(en, st, member, m); };
    e.send_message(member, st->coordinator, st->options.message_bits, e.now(), std::move(h));
}

}  // namespace

SyncHandle berkeley_round(Engine& engine, const std::string& coordinator, const std::vector<std::string>& members,
                          SimTime at, const SyncOptions& options) {
    auto st = std::make_shared<BerkeleyState>();
    st->report = std::make_shared<SyncReport>();
    st->report->sync_id = engine.next_sync_id();
    st->report->algorithm = SyncAlgorithm::berkeley;
    st->report->start = at;
    st->coordinator = coordinator;
    for (const auto& m : members) {
        if (m != coordinator && std::find(st->members.begin(), st->members.end(), m) == st->members.end()) {
            st->members.push_back(m);
        }
    }
    st->options = options;

    TraceRecord rec;
    rec.node = coordinator;
    rec.status = "start";
    engine.schedule(at, EventKind::sync_step,
                    [st](Engine& e, TraceRecord& r) {
                        st->t0 = e.clock(st->coordinator).read_ps(e.now());
                        st->offsets[st->coordinator] = 0;
                        r.clocks[st->coordinator] = st->t0;
                        r.sync = fields(*st->report, "start");
                        if (st->members.empty()) {
                            berkeley_compute(e, st, r);
                            return;
                        }
                        for (const auto& member : st->members) {
                            st->deadline[member] = e.now() + timeout_wait(e, st->coordinator, member, st->options);
                            ++st->report->messages_sent;
                            MessageHandlers h;
                            h.on_delivered = [st, member](Engine& en, const Message&, TraceRecord& dr) {
                                if (st->options.service_time <= 0) {
                                    berkeley_reply(en, st, member, dr);
                                    return;
                                }
                                TraceRecord serve;
                                serve.node = member;
                                serve.peer = st->coordinator;
                                serve.status = "serve";
                                en.schedule(en.now() + st->options.service_time, EventKind::sync_step,
                                            [st, member](Engine& en2, TraceRecord& sr) { berkeley_reply(en2, st, member, sr); },
                                            std::move(serve));
                            };
                            h.on_lost = [st, member](Engine& en, const Message& m, TraceRecord&) {
                                berkeley_lost(en, st, member, m);
                            };
                            st->poll_id[member] = e.send_message(st->coordinator, member, st->options.message_bits, e.now(), std::move(h));
                        }
                    },
                    std::move(rec));
    return st->report;
}

}  // namespace netsync
