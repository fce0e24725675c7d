#include "netsync/clock.hpp"

#include <algorithm>
#include <cmath>

#include "netsync/errors.hpp"

namespace netsync {

std::string_view to_string(ClockModel m) {
    switch (m) {
        case ClockModel::linear: return "linear";
        case ClockModel::quadratic: return "quadratic";
        case ClockModel::user_defined: return "user_defined";
    }
    return "linear";
}

ClockModel clock_model_from_string(std::string_view s) {
    if (s == "linear") return ClockModel::linear;
    if (s == "quadratic") return ClockModel::quadratic;
    if (s == "user_defined") return ClockModel::user_defined;
    throw ConfigError("unknown clock model '" + std::string(s) + "'");
}

std::string_view to_string(Extremum e) {
    switch (e) {
        case Extremum::local_maximum: return "local_maximum";
        case Extremum::local_minimum: return "local_minimum";
        case Extremum::none: return "none";
    }
    return "none";
}

std::optional<GnssPreset> gnss_preset(std::string_view name) {
    if (name == "gps") return GnssPreset{"gps", {0.0, 30.0}};
    if (name == "beidou") return GnssPreset{"beidou", {0.0, 50.0}};
    if (name == "galileo") return GnssPreset{"galileo", {0.0, 30.0}};
    if (name == "glonass") return GnssPreset{"glonass", {0.0, 40.0}};
    return std::nullopt;
}

const std::vector<std::string>& clock_preset_names() {
    static const std::vector<std::string> names{"perfect", "cesium", "quartz", "gps", "beidou", "galileo", "glonass"};
    return names;
}

std::optional<ClockParameters> clock_preset(std::string_view name) {
    ClockParameters p;
    if (name == "perfect" || name == "cesium") {
        p.model = ClockModel::linear;
        return p;
    }
    if (name == "quartz") {
        p.model = ClockModel::quadratic;
        p.beta = 10e-6;
        p.gamma = -1e-10;
        return p;
    }
    if (auto g = gnss_preset(name)) {
        p.model = ClockModel::linear;
        p.jitter = g->bound;
        return p;
    }
    return std::nullopt;
}

double sample_gnss_jitter(const JitterBound& bound, const StreamKey& key) noexcept {
    if (!(bound.hi_ns > bound.lo_ns)) return bound.lo_ns;
    double v = bound.lo_ns + uniform01(key) * (bound.hi_ns - bound.lo_ns);
    if (v >= bound.hi_ns) v = std::nextafter(bound.hi_ns, bound.lo_ns);
    return v;
}

ExtremumReport extremum_analysis(const ClockParameters& params) noexcept {
    ExtremumReport r;
    const double gamma = params.effective_gamma();
    r.concavity = 2.0 * gamma;
    if (gamma == 0.0) return r;
    r.has_extremum = true;
    r.t_star = -params.beta / (2.0 * gamma);
    r.classification = gamma < 0.0 ? Extremum::local_maximum : Extremum::local_minimum;
    return r;
}

SoftwareClock::SoftwareClock(std::string id, ClockParameters params, std::uint64_t seed)
    : id_(std::move(id)), params_(std::move(params)), seed_(seed), entity_(hash_id(id_)) {
    std::sort(params_.offset_table.begin(), params_.offset_table.end(),
              [](const OffsetPoint& a, const OffsetPoint& b) { return a.time < b.time; });
}

double SoftwareClock::model_offset(double t) const noexcept {
    if (params_.model == ClockModel::user_defined) {
        const auto& table = params_.offset_table;
        if (table.empty()) return 0.0;
        if (t <= table.front().time) return table.front().offset;
        if (t >= table.back().time) return table.back().offset;
        auto hi = std::upper_bound(table.begin(), table.end(), t,
                                   [](double x, const OffsetPoint& p) { return x < p.time; });
        auto lo = hi - 1;
        const double w = (t - lo->time) / (hi->time - lo->time);
        return lo->offset + w * (hi->offset - lo->offset);
    }
    return params_.alpha0 + params_.beta * t + params_.effective_gamma() * t * t;
}

double SoftwareClock::sample_noise(SimTime t) const noexcept {
    double eps = 0.0;
    if (params_.noise_sigma > 0.0) {
        eps += params_.noise_sigma * standard_normal({seed_, StreamTag::clock_noise, entity_, static_cast<std::uint64_t>(t)});
    }
    if (params_.jitter) {
        eps += 1e-9 * sample_gnss_jitter(*params_.jitter, {seed_, StreamTag::gnss_jitter, entity_, static_cast<std::uint64_t>(t)});
    }
    return eps;
}

double SoftwareClock::read(double t) const noexcept {
    const SimTime tp = to_picos(t);
    return t + (model_offset(t) + sample_noise(tp) + to_seconds(correction_at(tp)));
}

SimTime SoftwareClock::read_ps(SimTime t) const noexcept {
    return t + to_picos(model_offset(to_seconds(t)) + sample_noise(t)) + correction_at(t);
}

SimTime SoftwareClock::correction_at(SimTime t) const noexcept {
    SimTime sum = 0;
    for (const auto& c : corrections_) {
        if (t < c.start) continue;
        if (c.rate == 0.0) {
            sum += c.delta;
            continue;
        }
        const SimTime magnitude = c.delta < 0 ? -c.delta : c.delta;
        const double ramp = c.rate * static_cast<double>(t - c.start);
        const SimTime applied = ramp >= static_cast<double>(magnitude) ? magnitude : static_cast<SimTime>(std::nearbyint(ramp));
        sum += c.delta < 0 ? -applied : applied;
    }
    return sum;
}

void SoftwareClock::apply_correction(SimTime delta, const CorrectionPolicy& policy, SimTime now) {
    if (policy.kind == CorrectionPolicy::Kind::slew && !(policy.slew_rate > 0.0)) {
        throw ConfigError("slew rate must be positive");
    }
    if (delta == 0) return;
    const double rate = policy.kind == CorrectionPolicy::Kind::step ? 0.0 : policy.slew_rate;
    corrections_.push_back({now, delta, rate});
}

SimTime SoftwareClock::corrections_settled_at() const noexcept {
    SimTime settled = 0;
    for (const auto& c : corrections_) {
        SimTime done = c.start;
        if (c.rate != 0.0) {
            const double magnitude = std::abs(static_cast<double>(c.delta));
            done += static_cast<SimTime>(std::ceil(magnitude / c.rate));
        }
        settled = std::max(settled, done);
    }
    return settled;
}

}  // namespace netsync
