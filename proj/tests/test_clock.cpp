#include <doctest.h>

#include <cmath>
#include <vector>

#include "netsync/clock.hpp"
#include "netsync/errors.hpp"

using namespace netsync;

namespace {

ClockParameters quartz() { return *clock_preset("quartz"); }

ClockParameters quadratic(double beta, double gamma, double alpha0 = 0.0) {
    ClockParameters p;
    p.model = ClockModel::quadratic;
    p.alpha0 = alpha0;
    p.beta = beta;
    p.gamma = gamma;
    return p;
}

}  // namespace

TEST_CASE("identity clock reads wall time") {
    SoftwareClock c("c", {}, 1);
    CHECK(c.read(42.0) == 42.0);
    CHECK(c.offset(42.0) == 0.0);
    CHECK(c.read_ps(to_picos(42.0)) == to_picos(42.0));
}

TEST_CASE("quadratic clock at the extremum") {
    SoftwareClock c("c", quadratic(10e-6, -1e-10), 1);
    CHECK(c.read(5e4) == 50000.25);
    CHECK(c.offset(5e4) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(std::abs(c.offset(1e5)) <= 1e-12);
    CHECK(c.offset_ps(to_picos(5e4)) == to_picos(0.25));
    CHECK(c.offset_ps(to_picos(1e5)) == 0);
}

TEST_CASE("cesium preset with a unit-ppm rate") {
    auto p = *clock_preset("cesium");
    CHECK(p.effective_gamma() == 0.0);
    p.beta = 1e-6;
    SoftwareClock c("cs", p, 1);
    CHECK(c.read(1e6) == doctest::Approx(1000001.0).epsilon(1e-15));
    CHECK(c.offset_ps(to_picos(1e6)) == to_picos(1.0));
}

TEST_CASE("linear model ignores gamma") {
    auto p = quadratic(2e-6, 5e-9, 0.1);
    p.model = ClockModel::linear;
    SoftwareClock c("c", p, 1);
    CHECK(c.model_offset(100.0) == doctest::Approx(0.1 + 2e-4));
    CHECK_FALSE(extremum_analysis(p).has_extremum);
}

TEST_CASE("user-defined offset table interpolates and extrapolates flat") {
    ClockParameters p;
    p.model = ClockModel::user_defined;
    p.offset_table = {{10.0, 0.002}, {0.0, 0.0}, {20.0, -0.001}};
    SoftwareClock c("u", p, 1);
    CHECK(c.model_offset(-5.0) == 0.0);
    CHECK(c.model_offset(5.0) == doctest::Approx(0.001));
    CHECK(c.model_offset(15.0) == doctest::Approx(0.0005));
    CHECK(c.model_offset(100.0) == doctest::Approx(-0.001));
}

TEST_CASE("extremum analysis") {
    SUBCASE("negative gamma gives a local maximum") {
        auto r = extremum_analysis(quadratic(10e-6, -1e-10));
        CHECK(r.has_extremum);
        CHECK(r.t_star == 5e4);
        CHECK(r.classification == Extremum::local_maximum);
        CHECK(r.concavity == -2e-10);
    }
    SUBCASE("positive gamma gives a local minimum at negative time") {
        auto r = extremum_analysis(quadratic(10e-6, 1e-10));
        CHECK(r.has_extremum);
        CHECK(r.t_star == -5e4);
        CHECK(r.classification == Extremum::local_minimum);
    }
    SUBCASE("zero gamma has no extremum for any beta") {
        for (double beta : {-1e-3, 0.0, 1e-6, 42.0}) {
            auto r = extremum_analysis(quadratic(beta, 0.0));
            CHECK_FALSE(r.has_extremum);
            CHECK(r.classification == Extremum::none);
        }
    }
    SUBCASE("quartz preset") {
        auto r = extremum_analysis(quartz());
        CHECK(r.t_star == 5e4);
    }
}

TEST_CASE("extremum invariants over random parameters") {
    std::uint64_t k = 99;
    for (int i = 0; i < 500; ++i) {
        const double beta = (uniform01({k, StreamTag::clock_noise, 1, static_cast<std::uint64_t>(i)}) - 0.5) * 1e-4;
        double gamma = (uniform01({k, StreamTag::clock_noise, 2, static_cast<std::uint64_t>(i)}) - 0.5) * 1e-9;
        if (i % 7 == 0) gamma = 0.0;
        auto r = extremum_analysis(quadratic(beta, gamma));
        CHECK(r.has_extremum == (gamma != 0.0));
        CHECK((r.classification == Extremum::local_maximum) == (gamma < 0.0));
        CHECK((r.classification == Extremum::local_minimum) == (gamma > 0.0));
        CHECK(r.concavity == 2.0 * gamma);
    }
}

TEST_CASE("finite differences match the offset slope") {
    const std::vector<ClockParameters> cases{quartz(), quadratic(3e-6, 2e-11, 0.5), quadratic(-7e-5, -4e-12)};
    for (const auto& p : cases) {
        SoftwareClock c("fd", p, 1);
        for (double t : {1.0, 37.5, 1000.0, 25000.0, 86400.0}) {
            const double h = 1e-3 * std::max(1.0, t);
            const double slope = (c.model_offset(t + h) - c.model_offset(t - h)) / (2 * h);
            const double expected = p.beta + 2 * p.gamma * t;
            if (expected == 0.0) continue;
            CHECK(std::abs(slope - expected) <= 1e-6 * std::abs(expected));
        }
    }
}

TEST_CASE("local maximum is numerically observable") {
    SoftwareClock c("q", quartz(), 1);
    const double peak = c.offset(5e4);
    for (double d : {1.0, 10.0, 100.0}) {
        CHECK(c.offset(5e4 - d) < peak);
        CHECK(c.offset(5e4 + d) < peak);
    }
}

TEST_CASE("noise statistics") {
    ClockParameters p;
    p.noise_sigma = 1e-9;
    SoftwareClock c("noisy", p, 2024);
    const int n = 100000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double e = c.sample_noise(static_cast<SimTime>(i) * 1'000'000);
        sum += e;
        sq += e * e;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sq / n - mean * mean);
    CHECK(std::abs(mean) <= 3e-9 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(sd - 1e-9) <= 0.05e-9);
}

TEST_CASE("noise is zero without sigma and deterministic with it") {
    SoftwareClock quiet("q", {}, 5);
    CHECK(quiet.sample_noise(123456789) == 0.0);

    ClockParameters p;
    p.noise_sigma = 1e-6;
    SoftwareClock a("x", p, 5);
    SoftwareClock b("x", p, 5);
    SoftwareClock other_seed("x", p, 6);
    CHECK(a.sample_noise(777) == b.sample_noise(777));
    CHECK(a.read(3.25) == a.read(3.25));
    CHECK(a.sample_noise(777) != other_seed.sample_noise(777));
}

TEST_CASE("offset plus time equals the reading") {
    ClockParameters p = quartz();
    p.noise_sigma = 1e-7;
    SoftwareClock c("c", p, 3);
    for (double t : {0.0, 0.5, 12.0, 999.0}) {
        CHECK(c.offset(t) + t == c.read(t));
        CHECK(c.offset_ps(to_picos(t)) + to_picos(t) == c.read_ps(to_picos(t)));
    }
}

TEST_CASE("step corrections") {
    SoftwareClock c("c", {}, 1);
    const SimTime now = to_picos(10.0);
    const SimTime before = c.read_ps(now + 1);
    c.apply_correction(-2 * kPicosPerSecond, CorrectionPolicy::step(), now);
    CHECK(c.read_ps(now + 1) == before - 2 * kPicosPerSecond);
    CHECK(c.read_ps(now - 1) == now - 1);

    SoftwareClock d("d", {}, 1);
    d.apply_correction(0, CorrectionPolicy::step(), now);
    CHECK(d.read_ps(now + 5) == now + 5);
}

TEST_CASE("slew corrections ramp at the given rate") {
    SoftwareClock c("c", {}, 1);
    const auto policy = CorrectionPolicy::slew(1e-2);
    c.apply_correction(-2 * kPicosPerSecond, policy, 0);
    CHECK(c.corrections_settled_at() == to_picos(200.0));
    CHECK(c.correction_at(to_picos(100.0)) == -kPicosPerSecond);
    CHECK(c.correction_at(to_picos(199.0)) == to_picos(-1.99));
    CHECK(c.correction_at(to_picos(200.0)) == -2 * kPicosPerSecond);
    CHECK(c.correction_at(to_picos(500.0)) == -2 * kPicosPerSecond);

    CHECK_THROWS_AS(c.apply_correction(5, CorrectionPolicy::slew(0.0), 0), ConfigError);
    CHECK_THROWS_AS(c.apply_correction(5, CorrectionPolicy::slew(-1.0), 0), ConfigError);
}

TEST_CASE("presets") {
    for (const auto& name : clock_preset_names()) CHECK(clock_preset(name).has_value());
    CHECK_FALSE(clock_preset("sundial").has_value());
    auto q = quartz();
    CHECK(q.beta == 10e-6);
    CHECK(q.gamma == -1e-10);
    CHECK(clock_preset("beidou")->jitter == JitterBound{0.0, 50.0});
    CHECK(clock_preset("glonass")->jitter == JitterBound{0.0, 40.0});
}

TEST_CASE("gnss jitter bounds") {
    for (const char* name : {"gps", "beidou", "galileo", "glonass"}) {
        const auto preset = *gnss_preset(name);
        for (std::uint64_t i = 0; i < 100000; ++i) {
            const double v = sample_gnss_jitter(preset.bound, {17, StreamTag::gnss_jitter, hash_id(name), i});
            REQUIRE(v >= preset.bound.lo_ns);
            REQUIRE(v < preset.bound.hi_ns);
        }
    }
}

TEST_CASE("beidou jitter mean") {
    const auto preset = *gnss_preset("beidou");
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += sample_gnss_jitter(preset.bound, {3, StreamTag::gnss_jitter, 8, static_cast<std::uint64_t>(i)});
    CHECK(std::abs(sum / n - 25.0) <= 0.5);
}

TEST_CASE("degenerate jitter interval") {
    for (std::uint64_t i = 0; i < 100; ++i) CHECK(sample_gnss_jitter({0.0, 0.0}, {1, StreamTag::gnss_jitter, 1, i}) == 0.0);
}

TEST_CASE("time conversions") {
    CHECK(to_picos(1.0) == kPicosPerSecond);
    CHECK(to_picos(1.074e-3) == 1'074'000'000);
    CHECK(to_picos(-0.25) == -250'000'000'000);
    CHECK(floor_div(-3, 2) == -2);
    CHECK(floor_div(3, 2) == 1);
    CHECK(floor_div(-4, 2) == -2);
}
