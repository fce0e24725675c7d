#include "netsync/trace.hpp"

#include <json.hpp>

#include "netsync/errors.hpp"

namespace netsync {

using ojson = nlohmann::ordered_json;

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::message_send: return "message_send";
        case EventKind::hop_arrival: return "hop_arrival";
        case EventKind::delivery: return "delivery";
        case EventKind::timeout: return "timeout";
        case EventKind::sync_step: return "sync_step";
        case EventKind::attack_edge: return "attack_edge";
    }
    return "sync_step";
}

EventKind event_kind_from_string(std::string_view s) {
    for (auto k : {EventKind::message_send, EventKind::hop_arrival, EventKind::delivery, EventKind::timeout,
                   EventKind::sync_step, EventKind::attack_edge}) {
        if (to_string(k) == s) return k;
    }
    throw ParseError("unknown trace record kind '" + std::string(s) + "'", 1, 1);
}

const std::vector<std::string>& trace_field_names() {
    static const std::vector<std::string> names{"t_ps",   "seq",   "kind",      "msg",     "node",   "peer",
                                                "status", "route", "delay_ps",  "clocks_ps", "attacks", "sync"};
    return names;
}

namespace {

const std::vector<std::string> kDelayKeys{"router", "transmission", "propagation", "total"};
const std::vector<std::string> kSyncKeys{"id",          "algorithm", "phase",    "messages_sent", "convergence_ps",
                                         "corrections_ps", "residuals_ps", "clock_errors_ps", "excluded",
                                         "unreachable", "detail"};

ojson ps_map(const std::map<std::string, SimTime>& m) {
    ojson o = ojson::object();
    for (const auto& [k, v] : m) o[k] = v;
    return o;
}

ojson sync_json(const SyncFields& s) {
    ojson o;
    o["id"] = s.sync_id;
    o["algorithm"] = s.algorithm;
    o["phase"] = s.phase;
    if (s.messages_sent) o["messages_sent"] = *s.messages_sent;
    if (s.convergence) o["convergence_ps"] = *s.convergence;
    if (!s.corrections.empty()) o["corrections_ps"] = ps_map(s.corrections);
    if (!s.residuals.empty()) o["residuals_ps"] = ps_map(s.residuals);
    if (!s.clock_errors.empty()) o["clock_errors_ps"] = ps_map(s.clock_errors);
    if (!s.excluded.empty()) o["excluded"] = s.excluded;
    if (!s.unreachable.empty()) o["unreachable"] = s.unreachable;
    if (!s.detail.empty()) o["detail"] = s.detail;
    return o;
}

[[noreturn]] void schema_error(const std::string& what) { throw ParseError("trace schema: " + what, 1, 1); }

void check_keys(const nlohmann::json& obj, const std::vector<std::string>& allowed, const char* where) {
    if (!obj.is_object()) schema_error(std::string(where) + " is not an object");
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            schema_error(std::string("unknown key '") + item.key() + "' in " + where);
        }
    }
}

std::map<std::string, SimTime> read_ps_map(const nlohmann::json& j) {
    if (!j.is_object()) schema_error("expected an object of picosecond values");
    std::map<std::string, SimTime> m;
    for (const auto& item : j.items()) m[item.key()] = item.value().get<SimTime>();
    return m;
}

}  // namespace

std::string to_json_line(const TraceRecord& r) {
    ojson o;
    o["t_ps"] = r.time;
    o["seq"] = r.sequence;
    o["kind"] = std::string(to_string(r.kind));
    if (r.message_id) o["msg"] = *r.message_id;
    if (!r.node.empty()) o["node"] = r.node;
    if (!r.peer.empty()) o["peer"] = r.peer;
    if (!r.status.empty()) o["status"] = r.status;
    if (!r.route.empty()) o["route"] = r.route;
    if (r.delay) {
        ojson d;
        d["router"] = r.delay->router;
        d["transmission"] = r.delay->transmission;
        d["propagation"] = r.delay->propagation;
        d["total"] = r.delay->total;
        o["delay_ps"] = d;
    }
    if (!r.clocks.empty()) o["clocks_ps"] = ps_map(r.clocks);
    if (!r.attacks.empty()) {
        ojson a = ojson::array();
        for (const auto& n : r.attacks) a.push_back({{"kind", n.kind}, {"target", n.target}});
        o["attacks"] = a;
    }
    if (r.sync) o["sync"] = sync_json(*r.sync);
    return o.dump();
}

std::string serialize_trace(std::span<const TraceRecord> records) {
    std::string out;
    for (const auto& r : records) {
        out += to_json_line(r);
        out += '\n';
    }
    return out;
}

TraceRecord parse_trace_line(std::string_view line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), 1, static_cast<int>(e.byte));
    }
    try {
        check_keys(j, trace_field_names(), "record");
        for (const char* required : {"t_ps", "seq", "kind"}) {
            if (!j.contains(required)) schema_error(std::string("missing key '") + required + "'");
        }
        TraceRecord r;
        r.time = j.at("t_ps").get<SimTime>();
        r.sequence = j.at("seq").get<std::uint64_t>();
        r.kind = event_kind_from_string(j.at("kind").get<std::string>());
        if (j.contains("msg")) r.message_id = j["msg"].get<std::uint64_t>();
        if (j.contains("node")) r.node = j["node"].get<std::string>();
        if (j.contains("peer")) r.peer = j["peer"].get<std::string>();
        if (j.contains("status")) r.status = j["status"].get<std::string>();
        if (j.contains("route")) r.route = j["route"].get<std::vector<std::string>>();
        if (j.contains("delay_ps")) {
            const auto& d = j["delay_ps"];
            check_keys(d, kDelayKeys, "delay_ps");
            r.delay = DelayFields{d.at("router").get<SimTime>(), d.at("transmission").get<SimTime>(),
                                  d.at("propagation").get<SimTime>(), d.at("total").get<SimTime>()};
        }
        if (j.contains("clocks_ps")) r.clocks = read_ps_map(j["clocks_ps"]);
        if (j.contains("attacks")) {
            for (const auto& a : j["attacks"]) {
                check_keys(a, {"kind", "target"}, "attack note");
                r.attacks.push_back({a.at("kind").get<std::string>(), a.at("target").get<std::string>()});
            }
        }
        if (j.contains("sync")) {
            const auto& s = j["sync"];
            check_keys(s, kSyncKeys, "sync");
            SyncFields f;
            f.sync_id = s.at("id").get<std::uint64_t>();
            f.algorithm = s.at("algorithm").get<std::string>();
            f.phase = s.at("phase").get<std::string>();
            if (s.contains("messages_sent")) f.messages_sent = s["messages_sent"].get<std::uint64_t>();
            if (s.contains("convergence_ps")) f.convergence = s["convergence_ps"].get<SimTime>();
            if (s.contains("corrections_ps")) f.corrections = read_ps_map(s["corrections_ps"]);
            if (s.contains("residuals_ps")) f.residuals = read_ps_map(s["residuals_ps"]);
            if (s.contains("clock_errors_ps")) f.clock_errors = read_ps_map(s["clock_errors_ps"]);
            if (s.contains("excluded")) f.excluded = s["excluded"].get<std::vector<std::string>>();
            if (s.contains("unreachable")) f.unreachable = s["unreachable"].get<std::vector<std::string>>();
            if (s.contains("detail")) f.detail = s["detail"].get<std::string>();
            r.sync = std::move(f);
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        schema_error(e.what());
    }
}

std::vector<TraceRecord> parse_trace(std::string_view text) {
    std::vector<TraceRecord> out;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        const auto line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        try {
            out.push_back(parse_trace_line(line));
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()).substr(std::string(e.what()).find(": ") + 2), line_no, e.column());
        }
    }
    return out;
}

}  // namespace netsync
