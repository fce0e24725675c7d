#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netsync/random.hpp"
#include "netsync/time.hpp"

namespace netsync {

enum class ClockModel { linear, quadratic, user_defined };

std::string_view to_string(ClockModel m);
ClockModel clock_model_from_string(std::string_view s);

/// One knot of a user-defined offset curve: at wall time `time` the clock
/// deviates by `offset` seconds. Linear between knots, flat outside.
struct OffsetPoint {
    double time = 0.0;
    double offset = 0.0;

    bool operator==(const OffsetPoint&) const = default;
};

/// Half-open per-reading uncertainty interval [lo_ns, hi_ns) in nanoseconds.
struct JitterBound {
    double lo_ns = 0.0;
    double hi_ns = 0.0;

    bool operator==(const JitterBound&) const = default;
};

/// Drift model of a software clock. The offset from the wall clock is
///
///     alpha(t) = alpha0 + beta*t + gamma*t^2 + eps(t)
///
/// so beta is the frequency offset relative to a perfect clock and gamma the
/// frequency drift. The linear model ignores gamma entirely. The user-defined
/// model replaces the polynomial with `offset_table`.
struct ClockParameters {
    ClockModel model = ClockModel::linear;
    double alpha0 = 0.0;       // s
    double beta = 0.0;         // s/s
    double gamma = 0.0;        // 1/s
    double noise_sigma = 0.0;  // s, white Gaussian
    std::vector<OffsetPoint> offset_table;
    std::optional<JitterBound> jitter;

    /// gamma as used in evaluation (0 unless quadratic).
    double effective_gamma() const noexcept { return model == ClockModel::quadratic ? gamma : 0.0; }

    bool operator==(const ClockParameters&) const = default;
};

/// Named presets: perfect, cesium, quartz, gps, beidou, galileo, glonass.
std::optional<ClockParameters> clock_preset(std::string_view name);
const std::vector<std::string>& clock_preset_names();

struct GnssPreset {
    std::string name;
    JitterBound bound;
};

/// Time-transfer uncertainty of the four GNSS systems (one-way).
std::optional<GnssPreset> gnss_preset(std::string_view name);

/// Uniform draw over [bound.lo_ns, bound.hi_ns), in nanoseconds; a
/// degenerate interval returns lo_ns.
double sample_gnss_jitter(const JitterBound& bound, const StreamKey& key) noexcept;

enum class Extremum { local_maximum, local_minimum, none };

std::string_view to_string(Extremum e);

struct ExtremumReport {
    bool has_extremum = false;
    double t_star = 0.0;     // s; reported even when negative
    Extremum classification = Extremum::none;
    double concavity = 0.0;  // second derivative 2*gamma
};

/// Second-derivative test on the polynomial offset. The offset's slope
/// beta + 2*gamma*t vanishes at t* = -beta / (2*gamma).
ExtremumReport extremum_analysis(const ClockParameters& params) noexcept;

struct CorrectionPolicy {
    enum class Kind { step, slew };

    Kind kind = Kind::step;
    double slew_rate = 0.0;  // seconds of correction per simulated second

    static CorrectionPolicy step() { return {}; }
    static CorrectionPolicy slew(double rate) { return {Kind::slew, rate}; }

    bool operator==(const CorrectionPolicy&) const = default;
};

/// A drifting clock owned by one node. Readings are pure functions of the
/// query time; only apply_correction mutates state.
class SoftwareClock {
public:
    SoftwareClock() = default;
    SoftwareClock(std::string id, ClockParameters params, std::uint64_t seed);

    const std::string& id() const noexcept { return id_; }
    const ClockParameters& params() const noexcept { return params_; }

    /// Deterministic offset without noise or corrections, in seconds.
    double model_offset(double t) const noexcept;

    /// eps at wall time t (Gaussian plus any GNSS jitter), in seconds.
    double sample_noise(SimTime t) const noexcept;

    /// C(t) in seconds.
    double read(double t) const noexcept;
    /// alpha(t) = read(t) - t.
    double offset(double t) const noexcept { return read(t) - t; }

    /// C(t) in integer picoseconds; offsets are rounded half to even.
    SimTime read_ps(SimTime t) const noexcept;
    SimTime offset_ps(SimTime t) const noexcept { return read_ps(t) - t; }

    /// Sum of the corrections in effect at t.
    SimTime correction_at(SimTime t) const noexcept;

    /// Step corrections take effect at `now`; slews ramp from `now` at the
    /// policy rate until `delta` is fully applied. Throws ConfigError for a
    /// non-positive slew rate.
    void apply_correction(SimTime delta, const CorrectionPolicy& policy, SimTime now);

    /// Time at which every correction issued so far is fully applied.
    SimTime corrections_settled_at() const noexcept;

private:
    struct Correction {
        SimTime start;
        SimTime delta;
        double rate;  // 0 for a step
    };

    std::string id_;
    ClockParameters params_;
    std::uint64_t seed_ = 0;
    std::uint64_t entity_ = 0;
    std::vector<Correction> corrections_;
};

}  // namespace netsync
