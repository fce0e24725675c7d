#include "netsync/netsync.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <string>

#include "netsync/clock.hpp"
#include "netsync/diff.hpp"
#include "netsync/dot.hpp"
#include "netsync/errors.hpp"
#include "netsync/metrics.hpp"
#include "netsync/scenario.hpp"
#include "netsync/simulation.hpp"

struct netsync_scenario {
    netsync::Scenario scenario;
};

struct netsync_run {
    netsync::RunResult result;
    std::string trace;
    std::string metrics;
};

namespace {

thread_local std::string last_error;

netsync_status fail(netsync_status status, const std::string& message) {
    last_error = message;
    return status;
}

// Maps the exception in flight to a status code.
netsync_status translate() {
    try {
        throw;
    } catch (const netsync::ParseError& e) {
        return fail(NETSYNC_ERR_VALIDATION, std::string("parse error at ") + e.what());
    } catch (const netsync::ValidationError& e) {
        return fail(NETSYNC_ERR_VALIDATION, e.what());
    } catch (const netsync::ConfigError& e) {
        return fail(NETSYNC_ERR_VALIDATION, e.what());
    } catch (const netsync::NoRoute& e) {
        return fail(NETSYNC_ERR_RUNTIME, e.what());
    } catch (const netsync::Error& e) {
        return fail(NETSYNC_ERR_RUNTIME, e.what());
    } catch (const std::bad_alloc&) {
        return fail(NETSYNC_ERR_RUNTIME, "out of memory");
    } catch (const std::exception& e) {
        return fail(NETSYNC_ERR_RUNTIME, e.what());
    } catch (...) {
        return fail(NETSYNC_ERR_RUNTIME, "unknown error");
    }
}

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* netsync_last_error(void) { return last_error.c_str(); }

const char* netsync_version(void) { return "0.1.0"; }

void netsync_string_free(char* s) { std::free(s); }

netsync_status netsync_scenario_load(const char* path, netsync_scenario** out) {
    if (!path || !out) return fail(NETSYNC_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        std::FILE* probe = std::fopen(path, "rb");
        if (!probe) return fail(NETSYNC_ERR_IO, std::string("cannot open scenario file '") + path + "'");
        std::fclose(probe);
        auto h = std::make_unique<netsync_scenario>();
        h->scenario = netsync::load_scenario(path);
        *out = h.release();
        return NETSYNC_OK;
    } catch (...) {
        return translate();
    }
}

netsync_status netsync_scenario_parse(const char* text, netsync_scenario** out) {
    if (!text || !out) return fail(NETSYNC_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        auto h = std::make_unique<netsync_scenario>();
        h->scenario = netsync::load_scenario_text(text);
        *out = h.release();
        return NETSYNC_OK;
    } catch (...) {
        return translate();
    }
}

void netsync_scenario_free(netsync_scenario* scenario) { delete scenario; }

uint64_t netsync_scenario_seed(const netsync_scenario* scenario) { return scenario ? scenario->scenario.config.seed : 0; }

netsync_status netsync_scenario_write(const netsync_scenario* scenario, char** out) {
    if (!scenario || !out) return fail(NETSYNC_ERR_ARGUMENT, "null argument");
    try {
        *out = duplicate(netsync::write_scenario(scenario->scenario));
        return NETSYNC_OK;
    } catch (...) {
        return translate();
    }
}

netsync_status netsync_run_create(const netsync_scenario* scenario, uint64_t seed, netsync_run** out) {
    if (!scenario || !out) return fail(NETSYNC_ERR_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        auto h = std::make_unique<netsync_run>();
        h->result = netsync::run_scenario(scenario->scenario, seed);
        h->trace = netsync::serialize_trace(h->result.trace);
        h->metrics = netsync::to_json(netsync::metrics_report(h->result.trace));
        const bool fatal = h->result.fatal;
        *out = h.release();
        if (fatal) {
            for (const auto& r : (*out)->result.reports) {
                if (r.aborted) return fail(NETSYNC_ERR_RUNTIME, "sync " + std::to_string(r.sync_id) + " aborted: " + r.failure);
            }
        }
        return NETSYNC_OK;
    } catch (...) {
        return translate();
    }
}

void netsync_run_free(netsync_run* run) { delete run; }

const char* netsync_run_trace(const netsync_run* run, size_t* length) {
    if (!run) return nullptr;
    if (length) *length = run->trace.size();
    return run->trace.c_str();
}

const char* netsync_run_metrics(const netsync_run* run, size_t* length) {
    if (!run) return nullptr;
    if (length) *length = run->metrics.size();
    return run->metrics.c_str();
}

size_t netsync_run_sync_count(const netsync_run* run) { return run ? run->result.reports.size() : 0; }

netsync_status netsync_run_sync_residual(const netsync_run* run, size_t index, int64_t* residual_ps) {
    if (!run || !residual_ps) return fail(NETSYNC_ERR_ARGUMENT, "null argument");
    if (index >= run->result.reports.size()) return fail(NETSYNC_ERR_ARGUMENT, "sync index out of range");
    const auto& r = run->result.reports[index];
    if (!r.ok()) return fail(NETSYNC_ERR_RUNTIME, "sync did not complete: " + r.failure);
    int64_t worst = 0;
    for (const auto& [node, res] : r.residuals) worst = res > worst ? res : worst;
    *residual_ps = worst;
    return NETSYNC_OK;
}

netsync_status netsync_analyze_clock(double beta, double gamma, netsync_extremum* out) {
    if (!out) return fail(NETSYNC_ERR_ARGUMENT, "null argument");
    netsync::ClockParameters p;
    p.model = netsync::ClockModel::quadratic;
    p.beta = beta;
    p.gamma = gamma;
    const auto r = netsync::extremum_analysis(p);
    out->has_extremum = r.has_extremum ? 1 : 0;
    out->t_star_s = r.t_star;
    out->concavity = r.concavity;
    switch (r.classification) {
        case netsync::Extremum::local_maximum: out->classification = NETSYNC_EXTREMUM_LOCAL_MAXIMUM; break;
        case netsync::Extremum::local_minimum: out->classification = NETSYNC_EXTREMUM_LOCAL_MINIMUM; break;
        case netsync::Extremum::none: out->classification = NETSYNC_EXTREMUM_NONE; break;
    }
    return NETSYNC_OK;
}

netsync_status netsync_clock_offset(double alpha0, double beta, double gamma, double t, double* out) {
    if (!out) return fail(NETSYNC_ERR_ARGUMENT, "null argument");
    netsync::ClockParameters p;
    p.model = netsync::ClockModel::quadratic;
    p.alpha0 = alpha0;
    p.beta = beta;
    p.gamma = gamma;
    *out = netsync::SoftwareClock("analysis", p, 0).offset(t);
    return NETSYNC_OK;
}

netsync_status netsync_export_dot(const netsync_scenario* scenario, double t_s, uint64_t seed, char** out) {
    if (!scenario || !out) return fail(NETSYNC_ERR_ARGUMENT, "null argument");
    try {
        *out = duplicate(netsync::export_graph(scenario->scenario, netsync::to_picos(t_s), seed));
        return NETSYNC_OK;
    } catch (...) {
        return translate();
    }
}

netsync_status netsync_diff_traces(const char* trace_a, const char* trace_b, int* identical, char** report) {
    if (!trace_a || !trace_b || !identical || !report) return fail(NETSYNC_ERR_ARGUMENT, "null argument");
    try {
        const auto d = netsync::diff_traces(trace_a, trace_b);
        *identical = d.identical ? 1 : 0;
        *report = duplicate(netsync::render(d));
        return NETSYNC_OK;
    } catch (...) {
        return translate();
    }
}

}  // extern "C"
