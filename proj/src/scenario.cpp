#include "netsync/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "netsync/errors.hpp"

namespace netsync {

using ojson = nlohmann::ordered_json;

const NamedClock* Scenario::find_clock(std::string_view name) const {
    for (const auto& c : clocks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

namespace {

// Reading helpers. `where` is a JSON-pointer-like location used in messages.

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw ValidationError(where + ": " + what);
}

void allow_keys(const ojson& obj, const std::string& where, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) bad(where, "expected an object");
    for (const auto& item : obj.items()) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; })) {
            bad(where, "unknown key '" + item.key() + "'");
        }
    }
}

double get_number(const ojson& obj, const char* key, const std::string& where, double fallback) {
    if (!obj.contains(key) || obj[key].is_null()) return fallback;
    if (!obj[key].is_number()) bad(where + "/" + key, "expected a number");
    return obj[key].get<double>();
}

std::optional<double> get_optional_number(const ojson& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
    if (!obj[key].is_number()) bad(where + "/" + key, "expected a number");
    return obj[key].get<double>();
}

std::string get_string(const ojson& obj, const char* key, const std::string& where, const std::string& fallback = {}) {
    if (!obj.contains(key) || obj[key].is_null()) return fallback;
    if (!obj[key].is_string()) bad(where + "/" + key, "expected a string");
    return obj[key].get<std::string>();
}

std::string require_string(const ojson& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) bad(where, std::string("missing required key '") + key + "'");
    return get_string(obj, key, where);
}

bool get_bool(const ojson& obj, const char* key, const std::string& where, bool fallback) {
    if (!obj.contains(key) || obj[key].is_null()) return fallback;
    if (!obj[key].is_boolean()) bad(where + "/" + key, "expected a boolean");
    return obj[key].get<bool>();
}

template <class F>
auto convert(const std::string& where, F&& f) {
    try {
        return f();
    } catch (const ConfigError& e) {
        bad(where, e.what());
    }
}

const ojson& array_at(const ojson& root, const char* key) {
    static const ojson empty = ojson::array();
    if (!root.contains(key)) return empty;
    if (!root[key].is_array()) bad(std::string("/") + key, "expected an array");
    return root[key];
}

ClockParameters read_clock(const ojson& j, const std::string& where, std::string& preset_out) {
    allow_keys(j, where, {"preset", "model", "alpha0_s", "beta", "gamma", "noise_sigma_s", "offset_table", "jitter_ns"});
    ClockParameters p;
    preset_out = get_string(j, "preset", where);
    if (!preset_out.empty()) {
        auto base = clock_preset(preset_out);
        if (!base) bad(where + "/preset", "unknown clock preset '" + preset_out + "'");
        p = *base;
    }
    if (j.contains("model")) {
        p.model = convert(where + "/model", [&] { return clock_model_from_string(get_string(j, "model", where)); });
    }
    p.alpha0 = get_number(j, "alpha0_s", where, p.alpha0);
    p.beta = get_number(j, "beta", where, p.beta);
    p.gamma = get_number(j, "gamma", where, p.gamma);
    p.noise_sigma = get_number(j, "noise_sigma_s", where, p.noise_sigma);
    if (j.contains("offset_table")) {
        const auto& t = j["offset_table"];
        if (!t.is_array()) bad(where + "/offset_table", "expected an array of [time_s, offset_s] pairs");
        p.offset_table.clear();
        for (std::size_t i = 0; i < t.size(); ++i) {
            const auto& pt = t[i];
            if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
                bad(where + "/offset_table/" + std::to_string(i), "expected [time_s, offset_s]");
            }
            p.offset_table.push_back({pt[0].get<double>(), pt[1].get<double>()});
        }
        std::stable_sort(p.offset_table.begin(), p.offset_table.end(),
                         [](const OffsetPoint& a, const OffsetPoint& b) { return a.time < b.time; });
    }
    if (j.contains("jitter_ns") && !j["jitter_ns"].is_null()) {
        const auto& b = j["jitter_ns"];
        if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
            bad(where + "/jitter_ns", "expected [lo_ns, hi_ns]");
        }
        p.jitter = JitterBound{b[0].get<double>(), b[1].get<double>()};
    }
    if (preset_out == "cesium") {
        p.model = ClockModel::linear;
        p.gamma = 0.0;
    }
    return p;
}

FailureModel read_failure(const ojson& j, const std::string& where) {
    allow_keys(j, where, {"mode", "failure_probability", "up_s", "down_s"});
    FailureModel f;
    f.mode = convert(where + "/mode", [&] { return failure_mode_from_string(get_string(j, "mode", where, "always_active")); });
    f.failure_probability = get_number(j, "failure_probability", where, 0.0);
    f.up_duration = get_number(j, "up_s", where, 0.0);
    f.down_duration = get_number(j, "down_s", where, 0.0);
    return f;
}

std::vector<std::string> read_string_list(const ojson& j, const char* key, const std::string& where) {
    std::vector<std::string> out;
    if (!j.contains(key)) return out;
    const auto& arr = j[key];
    if (!arr.is_array()) bad(where + "/" + key, "expected an array of strings");
    for (const auto& s : arr) {
        if (!s.is_string()) bad(where + "/" + key, "expected an array of strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
    int line = 1;
    int column = 1;
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    ojson root;
    try {
        root = ojson::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, column] = line_column(text, e.byte);
        std::string what = e.what();
        if (auto p = what.find("parse error"); p != std::string::npos) what = what.substr(p);
        throw ParseError(what, line, column);
    }
    allow_keys(root, "", {"config", "sync", "media", "clocks", "nodes", "links", "sync_schedule", "attacks", "workload"});

    Scenario s;
    if (root.contains("config")) {
        const auto& c = root["config"];
        allow_keys(c, "/config", {"name", "seed", "duration_s"});
        s.config.name = get_string(c, "name", "/config");
        if (c.contains("seed")) {
            if (!c["seed"].is_number_integer()) bad("/config/seed", "expected an unsigned integer");
            s.config.seed = c["seed"].get<std::uint64_t>();
        }
        s.config.duration = get_number(c, "duration_s", "/config", s.config.duration);
    }

    if (root.contains("sync")) {
        const auto& c = root["sync"];
        const std::string w = "/sync";
        allow_keys(c, w, {"policy", "slew_rate", "service_time_s", "message_bits", "outlier_threshold_s",
                          "timeout_factor", "fallback_timeout_s", "trace_attack_edges", "fail_on_no_route"});
        const std::string policy = get_string(c, "policy", w, "step");
        if (policy == "step") {
            s.sync.policy = CorrectionPolicy::step();
        } else if (policy == "slew") {
            s.sync.policy = CorrectionPolicy::slew(get_number(c, "slew_rate", w, 0.0));
        } else {
            bad(w + "/policy", "unknown correction policy '" + policy + "'");
        }
        s.sync.service_time = get_number(c, "service_time_s", w, s.sync.service_time);
        s.sync.sync_message_bits = get_number(c, "message_bits", w, s.sync.sync_message_bits);
        s.sync.outlier_threshold = get_optional_number(c, "outlier_threshold_s", w);
        s.sync.timeout_factor = get_number(c, "timeout_factor", w, s.sync.timeout_factor);
        s.sync.fallback_timeout = get_number(c, "fallback_timeout_s", w, s.sync.fallback_timeout);
        s.sync.trace_attack_edges = get_bool(c, "trace_attack_edges", w, false);
        s.sync.fail_on_no_route = get_bool(c, "fail_on_no_route", w, false);
    }

    if (root.contains("media")) {
        const auto& m = root["media"];
        if (!m.is_object()) bad("/media", "expected an object");
        for (const auto& item : m.items()) {
            const Medium medium = convert("/media/" + item.key(), [&] { return medium_from_string(item.key()); });
            if (!item.value().is_number()) bad("/media/" + item.key(), "expected a number");
            s.speeds[medium] = item.value().get<double>();
        }
    }

    if (root.contains("clocks")) {
        const auto& cs = root["clocks"];
        if (!cs.is_object()) bad("/clocks", "expected an object keyed by clock name");
        for (const auto& item : cs.items()) {
            NamedClock nc;
            nc.name = item.key();
            nc.params = read_clock(item.value(), "/clocks/" + item.key(), nc.preset);
            s.clocks.push_back(std::move(nc));
        }
    }

    const auto& nodes = array_at(root, "nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& j = nodes[i];
        const std::string w = "/nodes/" + std::to_string(i);
        allow_keys(j, w, {"id", "kind", "router_kind", "router_delay_s", "failure_model", "clock"});
        NodeSpec n;
        n.id = require_string(j, "id", w);
        n.kind = convert(w + "/kind", [&] { return node_kind_from_string(require_string(j, "kind", w)); });
        n.clock = get_string(j, "clock", w);
        if (n.is_router()) {
            n.router_kind = convert(w + "/router_kind", [&] { return router_kind_from_string(get_string(j, "router_kind", w, "regular")); });
            n.router_delay = get_number(j, "router_delay_s", w, default_router_delay(n.router_kind));
            if (j.contains("failure_model")) n.failure = read_failure(j["failure_model"], w + "/failure_model");
        } else {
            if (j.contains("router_delay_s")) n.router_delay = get_number(j, "router_delay_s", w, 0.0);
            if (j.contains("router_kind") || j.contains("failure_model")) {
                bad(w, "router_kind/failure_model given for non-router node '" + n.id + "'");
            }
        }
        s.topology.add_node(std::move(n));
    }

    const auto& links = array_at(root, "links");
    for (std::size_t i = 0; i < links.size(); ++i) {
        const auto& j = links[i];
        const std::string w = "/links/" + std::to_string(i);
        allow_keys(j, w, {"a", "b", "bandwidth_bps", "distance_m", "medium"});
        LinkSpec l;
        l.a = require_string(j, "a", w);
        l.b = require_string(j, "b", w);
        if (!j.contains("bandwidth_bps")) bad(w, "missing required key 'bandwidth_bps'");
        l.bandwidth = get_number(j, "bandwidth_bps", w, 0.0);
        l.distance = get_number(j, "distance_m", w, 0.0);
        l.medium = convert(w + "/medium", [&] { return medium_from_string(get_string(j, "medium", w, "fiber")); });
        s.topology.add_link(std::move(l));
    }

    const auto& schedule = array_at(root, "sync_schedule");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const auto& j = schedule[i];
        const std::string w = "/sync_schedule/" + std::to_string(i);
        allow_keys(j, w, {"time_s", "algorithm", "client", "server", "coordinator", "members", "outlier_threshold_s"});
        SyncTask t;
        t.time = get_number(j, "time_s", w, 0.0);
        t.algorithm = convert(w + "/algorithm", [&] { return sync_algorithm_from_string(require_string(j, "algorithm", w)); });
        if (t.algorithm == SyncAlgorithm::cristian) {
            t.client = require_string(j, "client", w);
            t.server = require_string(j, "server", w);
        } else {
            t.coordinator = require_string(j, "coordinator", w);
            t.members = read_string_list(j, "members", w);
            t.outlier_threshold = get_optional_number(j, "outlier_threshold_s", w);
        }
        s.sync_schedule.push_back(std::move(t));
    }

    const auto& attacks = array_at(root, "attacks");
    for (std::size_t i = 0; i < attacks.size(); ++i) {
        const auto& j = attacks[i];
        const std::string w = "/attacks/" + std::to_string(i);
        allow_keys(j, w, {"kind", "target", "window_s", "delay_multiplier", "drop_probability", "forged_offset_s",
                          "mode", "added_delay_s"});
        AttackSpec a;
        a.kind = convert(w + "/kind", [&] { return attack_kind_from_string(require_string(j, "kind", w)); });
        a.target = require_string(j, "target", w);
        if (!j.contains("window_s") || !j["window_s"].is_array() || j["window_s"].size() != 2 ||
            !j["window_s"][0].is_number() || !j["window_s"][1].is_number()) {
            bad(w + "/window_s", "expected [t_start_s, t_end_s]");
        }
        a.window_start = to_picos(j["window_s"][0].get<double>());
        a.window_end = to_picos(j["window_s"][1].get<double>());
        a.delay_multiplier = get_number(j, "delay_multiplier", w, 1.0);
        a.drop_probability = get_number(j, "drop_probability", w, 0.0);
        a.forged_offset = get_number(j, "forged_offset_s", w, 0.0);
        a.hijack_mode = convert(w + "/mode", [&] { return hijack_mode_from_string(get_string(j, "mode", w, "force_down")); });
        a.added_delay = get_number(j, "added_delay_s", w, 0.0);
        s.attacks.push_back(std::move(a));
    }

    const auto& workload = array_at(root, "workload");
    for (std::size_t i = 0; i < workload.size(); ++i) {
        const auto& j = workload[i];
        const std::string w = "/workload/" + std::to_string(i);
        allow_keys(j, w, {"time_s", "src", "dst", "size_bits"});
        WorkloadItem item;
        item.time = get_number(j, "time_s", w, 0.0);
        item.source = require_string(j, "src", w);
        item.destination = require_string(j, "dst", w);
        item.size_bits = get_number(j, "size_bits", w, 0.0);
        s.workload.push_back(std::move(item));
    }
    return s;
}

std::vector<Violation> validate_scenario(const Scenario& s) {
    std::vector<Violation> out = validate(s.topology);
    const auto& g = s.topology;

    if (!(s.config.duration > 0.0)) out.push_back({"/config/duration_s", "duration must be positive"});
    if (s.sync.policy.kind == CorrectionPolicy::Kind::slew && !(s.sync.policy.slew_rate > 0.0)) {
        out.push_back({"/sync/slew_rate", "slew rate must be positive"});
    }
    if (!(s.sync.service_time >= 0.0)) out.push_back({"/sync/service_time_s", "service time must be non-negative"});
    if (!(s.sync.sync_message_bits >= 0.0)) out.push_back({"/sync/message_bits", "message size must be non-negative"});
    if (!(s.sync.timeout_factor > 0.0)) out.push_back({"/sync/timeout_factor", "timeout factor must be positive"});
    if (!(s.sync.fallback_timeout > 0.0)) out.push_back({"/sync/fallback_timeout_s", "fallback timeout must be positive"});
    if (s.sync.outlier_threshold && !(*s.sync.outlier_threshold >= 0.0)) {
        out.push_back({"/sync/outlier_threshold_s", "outlier threshold must be non-negative"});
    }
    for (Medium m : {Medium::fiber, Medium::copper, Medium::wireless, Medium::satellite}) {
        if (!(s.speeds[m] > 0.0)) out.push_back({"/media/" + std::string(to_string(m)), "speed must be positive"});
    }

    std::set<std::string> clock_names;
    for (const auto& c : s.clocks) {
        if (!clock_names.insert(c.name).second) out.push_back({c.name, "duplicate clock name"});
        if (!(c.params.noise_sigma >= 0.0)) out.push_back({c.name, "noise_sigma must be non-negative"});
        if (c.params.jitter && !(c.params.jitter->lo_ns >= 0.0 && c.params.jitter->hi_ns >= c.params.jitter->lo_ns)) {
            out.push_back({c.name, "jitter bound must satisfy 0 <= lo <= hi"});
        }
    }

    for (const auto& n : g.nodes()) {
        if (n.is_router()) {
            if (!n.clock.empty()) out.push_back({n.id, "routers do not carry clocks"});
            continue;
        }
        const NamedClock* c = s.find_clock(n.clock);
        if (!n.clock.empty() && !c) out.push_back({n.id, "unknown clock '" + n.clock + "'"});
        if (c && n.kind == NodeKind::time_server && c->params.model == ClockModel::quadratic) {
            out.push_back({n.id, "time server clock '" + n.clock + "' has unbounded (quadratic) drift"});
        }
    }

    auto endpoint = [&](const std::string& id, const std::string& where) -> std::optional<std::size_t> {
        auto idx = g.index_of(id);
        if (!idx) {
            out.push_back({id, where + ": unknown node '" + id + "'"});
            return std::nullopt;
        }
        if (g.node(*idx).is_router()) {
            out.push_back({id, where + ": router '" + id + "' cannot take part in synchronization"});
            return std::nullopt;
        }
        return idx;
    };
    auto need_path = [&](std::size_t a, std::size_t b, const std::string& where) {
        if (!g.connected(a, b)) out.push_back({g.node(b).id, where + ": '" + g.node(a).id + "' and '" + g.node(b).id + "' are not connected"});
    };

    for (std::size_t i = 0; i < s.sync_schedule.size(); ++i) {
        const auto& t = s.sync_schedule[i];
        const std::string w = "/sync_schedule/" + std::to_string(i);
        if (!(t.time >= 0.0 && t.time <= s.config.duration)) out.push_back({w, "sync time outside [0, duration]"});
        if (t.outlier_threshold && !(*t.outlier_threshold >= 0.0)) out.push_back({w, "outlier threshold must be non-negative"});
        if (t.algorithm == SyncAlgorithm::cristian) {
            if (t.client == t.server) {
                out.push_back({t.client, w + ": client and server must differ"});
                continue;
            }
            auto c = endpoint(t.client, w);
            auto sv = endpoint(t.server, w);
            if (c && sv) need_path(*c, *sv, w);
        } else {
            auto k = endpoint(t.coordinator, w);
            std::size_t others = 0;
            for (const auto& m : t.members) {
                if (m == t.coordinator) continue;
                ++others;
                auto mi = endpoint(m, w);
                if (k && mi) need_path(*k, *mi, w);
            }
            if (others == 0) out.push_back({t.coordinator, w + ": Berkeley round needs at least one member besides the coordinator"});
        }
    }

    for (std::size_t i = 0; i < s.attacks.size(); ++i) {
        const auto& a = s.attacks[i];
        const std::string w = "/attacks/" + std::to_string(i);
        auto idx = g.index_of(a.target);
        if (!idx) {
            out.push_back({a.target, w + ": unknown target '" + a.target + "'"});
        } else if (a.kind == AttackKind::ip_spoof ? g.node(*idx).is_router() : !g.node(*idx).is_router()) {
            out.push_back({a.target, w + (a.kind == AttackKind::ip_spoof ? ": ip_spoof targets a client or time server"
                                                                          : ": target must be a router")});
        }
        if (a.window_start > a.window_end) out.push_back({w, "window start after window end"});
        if (!(a.delay_multiplier >= 1.0)) out.push_back({w, "delay_multiplier must be >= 1"});
        if (!(a.drop_probability >= 0.0 && a.drop_probability <= 1.0)) out.push_back({w, "drop_probability must lie in [0, 1]"});
        if (!(a.added_delay >= 0.0)) out.push_back({w, "added_delay must be non-negative"});
    }

    for (std::size_t i = 0; i < s.workload.size(); ++i) {
        const auto& item = s.workload[i];
        const std::string w = "/workload/" + std::to_string(i);
        if (!g.index_of(item.source)) out.push_back({item.source, w + ": unknown node '" + item.source + "'"});
        if (!g.index_of(item.destination)) out.push_back({item.destination, w + ": unknown node '" + item.destination + "'"});
        if (item.source == item.destination) out.push_back({w, "source and destination must differ"});
        if (!(item.size_bits >= 0.0)) out.push_back({w, "size must be non-negative"});
        if (!(item.time >= 0.0 && item.time <= s.config.duration)) out.push_back({w, "send time outside [0, duration]"});
    }
    return out;
}

Scenario load_scenario_text(std::string_view text) {
    Scenario s = parse_scenario(text);
    const auto violations = validate_scenario(s);
    if (!violations.empty()) {
        std::string msg = std::to_string(violations.size()) + " validation error(s):";
        for (const auto& v : violations) msg += "\n  " + v.entity + ": " + v.message;
        throw ValidationError(msg);
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario_text(buf.str());
}

std::string write_scenario(const Scenario& s) {
    ojson root;
    root["config"] = {{"name", s.config.name}, {"seed", s.config.seed}, {"duration_s", s.config.duration}};

    ojson sync;
    sync["policy"] = s.sync.policy.kind == CorrectionPolicy::Kind::step ? "step" : "slew";
    if (s.sync.policy.kind == CorrectionPolicy::Kind::slew) sync["slew_rate"] = s.sync.policy.slew_rate;
    sync["service_time_s"] = s.sync.service_time;
    sync["message_bits"] = s.sync.sync_message_bits;
    sync["outlier_threshold_s"] = s.sync.outlier_threshold ? ojson(*s.sync.outlier_threshold) : ojson(nullptr);
    sync["timeout_factor"] = s.sync.timeout_factor;
    sync["fallback_timeout_s"] = s.sync.fallback_timeout;
    sync["trace_attack_edges"] = s.sync.trace_attack_edges;
    sync["fail_on_no_route"] = s.sync.fail_on_no_route;
    root["sync"] = sync;

    ojson media;
    for (Medium m : {Medium::fiber, Medium::copper, Medium::wireless, Medium::satellite}) {
        media[std::string(to_string(m))] = s.speeds[m];
    }
    root["media"] = media;

    ojson clocks = ojson::object();
    for (const auto& c : s.clocks) {
        ojson j;
        if (!c.preset.empty()) j["preset"] = c.preset;
        j["model"] = std::string(to_string(c.params.model));
        j["alpha0_s"] = c.params.alpha0;
        j["beta"] = c.params.beta;
        j["gamma"] = c.params.gamma;
        j["noise_sigma_s"] = c.params.noise_sigma;
        if (!c.params.offset_table.empty()) {
            ojson table = ojson::array();
            for (const auto& p : c.params.offset_table) table.push_back({p.time, p.offset});
            j["offset_table"] = table;
        }
        if (c.params.jitter) j["jitter_ns"] = {c.params.jitter->lo_ns, c.params.jitter->hi_ns};
        clocks[c.name] = j;
    }
    root["clocks"] = clocks;

    ojson nodes = ojson::array();
    for (const auto& n : s.topology.nodes()) {
        ojson j;
        j["id"] = n.id;
        j["kind"] = std::string(to_string(n.kind));
        if (n.is_router()) {
            j["router_kind"] = std::string(to_string(n.router_kind));
            j["router_delay_s"] = n.router_delay.value_or(0.0);
            ojson f;
            f["mode"] = std::string(to_string(n.failure.mode));
            f["failure_probability"] = n.failure.failure_probability;
            f["up_s"] = n.failure.up_duration;
            f["down_s"] = n.failure.down_duration;
            j["failure_model"] = f;
        } else {
            j["clock"] = n.clock;
        }
        nodes.push_back(j);
    }
    root["nodes"] = nodes;

    ojson links = ojson::array();
    for (const auto& l : s.topology.links()) {
        links.push_back({{"a", l.a}, {"b", l.b}, {"bandwidth_bps", l.bandwidth}, {"distance_m", l.distance},
                         {"medium", std::string(to_string(l.medium))}});
    }
    root["links"] = links;

    ojson schedule = ojson::array();
    for (const auto& t : s.sync_schedule) {
        ojson j;
        j["time_s"] = t.time;
        j["algorithm"] = std::string(to_string(t.algorithm));
        if (t.algorithm == SyncAlgorithm::cristian) {
            j["client"] = t.client;
            j["server"] = t.server;
        } else {
            j["coordinator"] = t.coordinator;
            j["members"] = t.members;
            j["outlier_threshold_s"] = t.outlier_threshold ? ojson(*t.outlier_threshold) : ojson(nullptr);
        }
        schedule.push_back(j);
    }
    root["sync_schedule"] = schedule;

    ojson attacks = ojson::array();
    for (const auto& a : s.attacks) {
        ojson j;
        j["kind"] = std::string(to_string(a.kind));
        j["target"] = a.target;
        j["window_s"] = {to_seconds(a.window_start), to_seconds(a.window_end)};
        j["delay_multiplier"] = a.delay_multiplier;
        j["drop_probability"] = a.drop_probability;
        j["forged_offset_s"] = a.forged_offset;
        j["mode"] = std::string(to_string(a.hijack_mode));
        j["added_delay_s"] = a.added_delay;
        attacks.push_back(j);
    }
    root["attacks"] = attacks;

    ojson workload = ojson::array();
    for (const auto& w : s.workload) {
        workload.push_back({{"time_s", w.time}, {"src", w.source}, {"dst", w.destination}, {"size_bits", w.size_bits}});
    }
    root["workload"] = workload;

    return root.dump(2) + "\n";
}

}  // namespace netsync
