#include <doctest.h>

#include <random>

#include "netsync/errors.hpp"
#include "netsync/metrics.hpp"
#include "netsync/sync.hpp"
#include "sync_fixtures.hpp"

using namespace netsync;
using namespace testing;

namespace {

constexpr SimTime kMs = 1'000'000'000;

}  // namespace

TEST_CASE("cristian estimate") {
    CHECK(cristian_estimate(100, 10) == 105);
    CHECK(cristian_estimate(100, 11) == 105);
}

TEST_CASE("cristian with symmetric delays recovers the server clock") {
    Engine e(make_world(cristian_line(3e-3), {{"client", offset_clock(0.7)}, {"server", offset_clock(-0.2)}}));
    auto rep = cristian_sync(e, "client", "server", to_picos(1.0));
    e.drain();
    REQUIRE(rep->ok());
    CHECK(rep->residuals.at("client") == 0);
    CHECK(rep->corrections.at("client") == to_picos(-0.9));
    CHECK(rep->messages_sent == 2);
    REQUIRE(rep->exchanges.size() == 1);
    CHECK(rep->exchanges[0].forward_delay == rep->exchanges[0].backward_delay);
    const SimTime later = to_picos(5.0);
    CHECK(e.clock("client").read_ps(later) == e.clock("server").read_ps(later));
}

TEST_CASE("cristian with 5 ms forward and 15 ms backward") {
    Engine e(make_world(cristian_line(5e-3), {}, 1, asymmetry(1.0, 0.0, 10e-3)));
    auto rep = cristian_sync(e, "client", "server", to_picos(1.0));
    e.drain();
    REQUIRE(rep->ok());
    CHECK(rep->exchanges[0].forward_delay == 5 * kMs);
    CHECK(rep->exchanges[0].backward_delay == 15 * kMs);
    CHECK(rep->residuals.at("client") == 5 * kMs);
    CHECK(rep->clock_errors.at("client") == -5 * kMs);

    const auto m = metrics_report(e.trace());
    REQUIRE(m.syncs.size() == 1);
    CHECK(m.syncs[0].precision_range_ns == 5e6);
}

TEST_CASE("cristian cancels a +2 s client offset") {
    Engine e(make_world(cristian_line(1e-3), {{"client", offset_clock(2.0)}}));
    auto rep = cristian_sync(e, "client", "server", to_picos(1.0));
    e.drain();
    REQUIRE(rep->ok());
    CHECK(rep->corrections.at("client") == to_picos(-2.0));
    CHECK(rep->residuals.at("client") == 0);
}

TEST_CASE("cristian residual law over random asymmetries") {
    std::mt19937_64 rng(1001);
    for (int i = 0; i < 100; ++i) {
        const double extra_f = static_cast<double>(rng() % 20000) * 1e-9;
        const double extra_b = static_cast<double>(rng() % 20000) * 1e-9 + (i % 2 ? 1e-12 : 0.0);
        std::uniform_real_distribution<double> off(-5.0, 5.0);
        Engine e(make_world(cristian_line(1e-4), {{"client", offset_clock(off(rng))}, {"server", offset_clock(off(rng))}},
                            static_cast<std::uint64_t>(i), asymmetry(1.0, extra_f, extra_b)));
        auto rep = cristian_sync(e, "client", "server", to_picos(1.0));
        e.drain();
        REQUIRE(rep->ok());
        const auto& x = rep->exchanges[0];
        CHECK(rep->clock_errors.at("client") == floor_div(x.forward_delay - x.backward_delay, 2));
        if ((x.backward_delay - x.forward_delay) % 2 == 0) {
            CHECK(2 * rep->residuals.at("client") == std::abs(x.backward_delay - x.forward_delay));
        }
    }
}

TEST_CASE("server service time is invisible to the client") {
    Engine e(make_world(cristian_line(1e-3)));
    SyncOptions opts;
    opts.service_time = 4 * kMs;
    auto rep = cristian_sync(e, "client", "server", to_picos(1.0), opts);
    e.drain();
    REQUIRE(rep->ok());
    CHECK(rep->clock_errors.at("client") == 2 * kMs);
}

TEST_CASE("slew correction converges after delta over rate") {
    Engine e(make_world(cristian_line(1e-3), {{"client", offset_clock(2.0)}}));
    SyncOptions opts;
    opts.policy = CorrectionPolicy::slew(1e-2);
    auto rep = cristian_sync(e, "client", "server", to_picos(1.0), opts);
    e.drain();
    REQUIRE(rep->ok());
    CHECK(rep->corrections.at("client") == to_picos(-2.0));
    CHECK(rep->convergence_time == to_picos(2e-3) + to_picos(200.0));
    CHECK(rep->residuals.at("client") == 0);
}

TEST_CASE("berkeley averaging step") {
    std::map<std::string, SimTime> offsets{{"a", 10 * kMs}, {"b", -4 * kMs}, {"coord", 0}};
    auto avg = berkeley_average(offsets, std::nullopt);
    CHECK(avg.mean == 2 * kMs);
    CHECK(avg.corrections.at("a") == -8 * kMs);
    CHECK(avg.corrections.at("b") == 6 * kMs);
    CHECK(avg.corrections.at("coord") == 2 * kMs);

    std::map<std::string, SimTime> outlier{{"a", 10 * kPicosPerSecond}, {"b", kMs}, {"coord", 0}};
    auto trimmed = berkeley_average(outlier, kPicosPerSecond);
    CHECK(trimmed.excluded == std::vector<std::string>{"a"});
    CHECK(trimmed.mean == kMs / 2);
    CHECK(trimmed.corrections.at("a") == kMs / 2 - 10 * kPicosPerSecond);
}

TEST_CASE("berkeley round over the network") {
    Engine e(make_world(star({"coord", "a", "b"}), {{"a", offset_clock(0.010)}, {"b", offset_clock(-0.004)}}));
    auto first = berkeley_round(e, "coord", {"a", "b"}, to_picos(1.0));
    auto second = berkeley_round(e, "coord", {"a", "b"}, to_picos(2.0));
    e.drain();
    REQUIRE(first->ok());
    CHECK(std::abs(first->corrections.at("a") + 8 * kMs) <= 1000);
    CHECK(std::abs(first->corrections.at("b") - 6 * kMs) <= 1000);
    CHECK(std::abs(first->corrections.at("coord") - 2 * kMs) <= 1000);
    CHECK(first->messages_sent == 6);
    for (const auto& [id, r] : first->residuals) CHECK(r <= 1000);
    REQUIRE(second->ok());
    for (const auto& [id, c] : second->corrections) CHECK(std::abs(c) <= 1000);
}

TEST_CASE("berkeley fixed point and message count") {
    Engine e(make_world(star({"coord", "a", "b", "c"})));
    auto rep = berkeley_round(e, "coord", {"a", "b", "c", "coord"}, to_picos(0.5));
    e.drain();
    REQUIRE(rep->ok());
    for (const auto& [id, c] : rep->corrections) CHECK(c == 0);
    CHECK(rep->messages_sent == 9);
    const auto m = metrics_report(e.trace());
    CHECK(m.syncs.at(0).messages_sent == 9);
}

TEST_CASE("berkeley excludes an outlier but still corrects it") {
    Engine e(make_world(star({"coord", "a", "b"}), {{"a", offset_clock(10.0)}, {"b", offset_clock(0.001)}}));
    SyncOptions opts;
    opts.outlier_threshold = kPicosPerSecond;
    auto rep = berkeley_round(e, "coord", {"a", "b"}, to_picos(1.0), opts);
    e.drain();
    REQUIRE(rep->ok());
    CHECK(rep->excluded == std::vector<std::string>{"a"});
    CHECK(std::abs(*rep->mean_offset - kMs / 2) <= 1000);
    CHECK(std::abs(rep->corrections.at("a") - (kMs / 2 - 10 * kPicosPerSecond)) <= 1000);
    CHECK(rep->residuals.at("a") <= 1000);
}

TEST_CASE("berkeley preserves the mean offset") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_real_distribution<double> off(-0.05, 0.05);
        std::map<std::string, ClockParameters> params;
        std::vector<std::string> ids{"coord", "m1", "m2", "m3", "m4"};
        for (const auto& id : ids) params[id] = offset_clock(off(rng));
        Engine e(make_world(star(ids), params));
        const SimTime t = to_picos(1.0);
        SimTime before = 0;
        for (const auto& id : ids) before += e.clock(id).offset_ps(t);
        auto rep = berkeley_round(e, "coord", {"m1", "m2", "m3", "m4"}, t);
        e.drain();
        REQUIRE(rep->ok());
        const SimTime after_t = to_picos(2.0);
        SimTime after = 0;
        for (const auto& id : ids) after += e.clock(id).offset_ps(after_t);
        CHECK(std::abs(after - before) <= 1000 * static_cast<SimTime>(ids.size()));
    }
}

TEST_CASE("berkeley with too few reachable participants aborts") {
    NetworkGraph g = star({"coord", "a"});
    g.add_node(router("dead", 1e-6, always_failed()));
    g.add_node(client("far"));
    g.add_link(link("hub", "dead", 1e9, 1));
    g.add_link(link("dead", "far", 1e9, 1));
    Engine e(make_world(g));
    auto rep = berkeley_round(e, "coord", {"far"}, to_picos(1.0));
    e.drain();
    CHECK(rep->aborted);
    CHECK(rep->unreachable == std::vector<std::string>{"far"});

    Engine e2(make_world(g));
    auto partial = berkeley_round(e2, "coord", {"a", "far"}, to_picos(1.0));
    e2.drain();
    CHECK(partial->ok());
    CHECK(partial->unreachable == std::vector<std::string>{"far"});
    CHECK(partial->corrections.count("far") == 0);
}

TEST_CASE("correction policy errors") {
    SoftwareClock c("c", {}, 1);
    CHECK_THROWS_AS(apply_correction(c, 10, CorrectionPolicy::slew(0.0), 0), ConfigError);
    CHECK(correction_effective_at(-2 * kPicosPerSecond, CorrectionPolicy::slew(1e-2), 0) == to_picos(200.0));
    CHECK(correction_effective_at(0, CorrectionPolicy::slew(1e-2), 7) == 7);
}
