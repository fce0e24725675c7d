#include <doctest.h>

#include "netsync/attacks.hpp"
#include "netsync/errors.hpp"
#include "netsync/routing.hpp"
#include "netsync/sync.hpp"
#include "sync_fixtures.hpp"

using namespace netsync;
using namespace testing;

namespace {

constexpr SimTime kMs = 1'000'000'000;

AttackSpec ddos(std::string target, double a, double b, double multiplier, double drop = 0.0) {
    auto s = attack_window(AttackKind::ddos, std::move(target), a, b);
    s.delay_multiplier = multiplier;
    s.drop_probability = drop;
    return s;
}

AttackSpec spoof(std::string victim, double a, double b, double forged) {
    auto s = attack_window(AttackKind::ip_spoof, std::move(victim), a, b);
    s.forged_offset = forged;
    return s;
}

AttackSpec hijack(std::string target, double a, double b, HijackMode mode, double added = 0.0) {
    auto s = attack_window(AttackKind::router_hijack, std::move(target), a, b);
    s.hijack_mode = mode;
    s.added_delay = added;
    return s;
}

std::string cristian_trace(std::vector<AttackSpec> attacks, std::map<std::string, ClockParameters> clocks = {},
                           std::uint64_t seed = 3) {
    Engine e(make_world(cristian_line(2e-3), std::move(clocks), seed, std::move(attacks)));
    cristian_sync(e, "client", "server", to_picos(1.0));
    cristian_sync(e, "client", "server", to_picos(2.0));
    e.send_message("server", "client", 1e5, to_picos(3.0));
    e.drain();
    return serialize_trace(e.trace());
}

}  // namespace

TEST_CASE("pure attack transforms") {
    RouterState base{true, 50'000'000};
    CHECK(apply_ddos(ddos("r", 0, 1, 10), base).delay == 500'000'000);
    CHECK(apply_ip_spoof(spoof("c", 0, 1, 1.0), 7) == 7 + kPicosPerSecond);
    CHECK_FALSE(apply_router_hijack(hijack("r", 0, 1, HijackMode::force_down), base).active);
    CHECK(apply_router_hijack(hijack("r", 0, 1, HijackMode::added_delay, 1e-3), base).delay == 50'000'000 + kMs);
    CHECK(ddos_drops(ddos("r", 0, 1, 1, 1.0), 1, 0, 5));
    CHECK_FALSE(ddos_drops(ddos("r", 0, 1, 1, 0.0), 1, 0, 5));
    CHECK(attack_kind_from_string("router_hijack") == AttackKind::router_hijack);
    CHECK_THROWS_AS(attack_kind_from_string("phishing"), ConfigError);
}

TEST_CASE("ddos scales the router term") {
    NetworkGraph g;
    g.add_node(client("a"));
    g.add_node(router("r", 50e-6));
    g.add_node(client("b"));
    g.add_link(link("a", "r", 1e9, 1000));
    g.add_link(link("r", "b", 1e9, 1000));
    Engine e(make_world(g, {}, 1, {ddos("r", 1.0, 2.0, 10)}));
    const auto inside = e.send_message("a", "b", 1000, to_picos(1.5));
    const auto outside = e.send_message("a", "b", 1000, to_picos(2.5));
    e.drain();
    CHECK(e.message(inside).route->breakdown.router_total == to_picos(500e-6));
    CHECK(e.message(outside).route->breakdown.router_total == to_picos(50e-6));
    CHECK(e.message(inside).attacks.size() == 1);
    CHECK(e.message(outside).attacks.empty());
}

TEST_CASE("ddos never shortens round trips through the target") {
    for (double m : {1.0, 2.0, 7.5, 100.0}) {
        Engine base(make_world(cristian_line(1e-3)));
        Engine hit(make_world(cristian_line(1e-3), {}, 1, {ddos("r", 0.5, 10.0, m)}));
        auto a = cristian_sync(base, "client", "server", to_picos(1.0));
        auto b = cristian_sync(hit, "client", "server", to_picos(1.0));
        base.drain();
        hit.drain();
        REQUIRE(a->ok());
        REQUIRE(b->ok());
        CHECK(b->exchanges[0].rtt >= a->exchanges[0].rtt);
        CHECK(b->exchanges[0].forward_delay == static_cast<SimTime>(std::nearbyint(m * 1e9)));
    }
}

TEST_CASE("certain ddos drop aborts the sync") {
    Engine e(make_world(cristian_line(1e-3), {}, 1, {ddos("r", 0.0, 10.0, 1.0, 1.0)}));
    auto rep = cristian_sync(e, "client", "server", to_picos(1.0));
    e.drain();
    CHECK(rep->aborted);
    CHECK(e.message(1).status == MessageStatus::dropped);
    CHECK(e.trace().back().kind == EventKind::timeout);
    // five attack-free round trips after the start
    CHECK(e.trace().back().time == to_picos(1.0) + 5 * 2 * kMs);
}

TEST_CASE("ip spoof with symmetric delays shifts the client by the forgery") {
    Engine e(make_world(cristian_line(2e-3), {}, 1, {spoof("client", 0.0, 10.0, 1.0)}));
    auto rep = cristian_sync(e, "client", "server", to_picos(1.0));
    e.drain();
    REQUIRE(rep->ok());
    CHECK(rep->residuals.at("client") == kPicosPerSecond);
    CHECK(rep->clock_errors.at("client") == kPicosPerSecond);
}

TEST_CASE("spoof superposition") {
    const double forged = 1.0;
    for (auto [f, b] : {std::pair{0.0, 10e-3}, std::pair{7e-3, 0.0}, std::pair{0.0, 0.0}, std::pair{3e-6, 11e-6}}) {
        auto attacks = asymmetry(1.0, f, b);
        Engine base(make_world(cristian_line(5e-3), {}, 1, attacks));
        attacks.push_back(spoof("client", 0.0, 10.0, forged));
        Engine hit(make_world(cristian_line(5e-3), {}, 1, attacks));
        auto r0 = cristian_sync(base, "client", "server", to_picos(1.0));
        auto r1 = cristian_sync(hit, "client", "server", to_picos(1.0));
        base.drain();
        hit.drain();
        REQUIRE(r0->ok());
        REQUIRE(r1->ok());
        CHECK(r1->clock_errors.at("client") == r0->clock_errors.at("client") + to_picos(forged));
    }
    // forward 5 ms, backward 15 ms: the client ends 5 ms behind before the forgery
    Engine e(make_world(cristian_line(5e-3), {}, 1, [] {
        auto a = asymmetry(1.0, 0.0, 10e-3);
        a.push_back(spoof("client", 0.0, 10.0, 1.0));
        return a;
    }()));
    auto rep = cristian_sync(e, "client", "server", to_picos(1.0));
    e.drain();
    CHECK(rep->residuals.at("client") == kPicosPerSecond - 5 * kMs);
}

TEST_CASE("identity forgery and out-of-window attacks leave the trace untouched") {
    const auto baseline = cristian_trace({});
    CHECK(cristian_trace({spoof("client", 0.0, 100.0, 0.0)}) == baseline);
    CHECK(cristian_trace({spoof("client", 500.0, 600.0, 1.0)}) == baseline);
    CHECK(cristian_trace({ddos("r", 500.0, 600.0, 50.0, 1.0)}) == baseline);
    CHECK(cristian_trace({hijack("r", 500.0, 600.0, HijackMode::force_down)}) == baseline);
    CHECK(cristian_trace({hijack("r", 0.0, 0.5, HijackMode::added_delay, 1.0)}) == baseline);
    CHECK(cristian_trace({spoof("client", 0.0, 100.0, 1.0)}) != baseline);
}

TEST_CASE("force_down on the only bridge blocks until the window ends") {
    NetworkGraph g = cristian_line(1e-3);
    std::vector<AttackSpec> attacks{hijack("r", 1.0, 2.0, HijackMode::force_down)};
    NetworkContext net{&g, {}, 1, attacks};
    CHECK_THROWS_AS(shortest_path(net, {"client", "server", to_picos(1.5), 100, 1}), NoRoute);
    CHECK_NOTHROW(shortest_path(net, {"client", "server", to_picos(2.5), 100, 2}));
    CHECK_NOTHROW(shortest_path(net, {"client", "server", to_picos(0.5), 100, 3}));
}

TEST_CASE("added delay pushes routing onto the direct edge") {
    NetworkGraph g;
    g.add_node(client("a"));
    g.add_node(router("m", 1e-3));
    g.add_node(client("b"));
    g.add_link(link("a", "b", 1e12, 2e6));    // 10 ms
    g.add_link(link("a", "m", 1e12, 100e3));  // 0.5 ms, router 1 ms
    g.add_link(link("m", "b", 1e12, 300e3));  // 1.5 ms
    std::vector<AttackSpec> attacks{hijack("m", 1.0, 2.0, HijackMode::added_delay, 9e-3)};
    NetworkContext net{&g, {}, 1, attacks};
    auto before = shortest_path(net, {"a", "b", to_picos(0.5), 0, 1});
    auto during = shortest_path(net, {"a", "b", to_picos(1.5), 0, 2});
    CHECK(before.hops == std::vector<std::string>{"a", "m", "b"});
    CHECK(during.hops == std::vector<std::string>{"a", "b"});
    CHECK(during.breakdown.total == to_picos(10e-3));
    auto v = net.view(to_picos(1.5), 2);
    auto oracle = brute_force_route(v, "a", "b", 0);
    REQUIRE(oracle);
    CHECK(oracle->hops == during.hops);
}

TEST_CASE("attack edges are traced only on request") {
    auto w = make_world(cristian_line(1e-3), {}, 1, {ddos("r", 1.0, 2.0, 2.0)});
    Engine quiet(w);
    quiet.drain();
    CHECK(quiet.trace().empty());
    w.trace_attack_edges = true;
    Engine loud(w);
    loud.drain();
    REQUIRE(loud.trace().size() == 2);
    CHECK(loud.trace()[0].kind == EventKind::attack_edge);
    CHECK(loud.trace()[0].status == "start");
    CHECK(loud.trace()[1].status == "end");
}
