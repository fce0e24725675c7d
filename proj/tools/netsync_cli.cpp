// Command-line front end. Talks to the simulator only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "netsync/netsync.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct ScenarioDeleter {
    void operator()(netsync_scenario* s) const { netsync_scenario_free(s); }
};
struct RunDeleter {
    void operator()(netsync_run* r) const { netsync_run_free(r); }
};
struct StringDeleter {
    void operator()(char* s) const { netsync_string_free(s); }
};

using ScenarioPtr = std::unique_ptr<netsync_scenario, ScenarioDeleter>;
using RunPtr = std::unique_ptr<netsync_run, RunDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int exit_code(netsync_status s) {
    switch (s) {
        case NETSYNC_OK: return kExitOk;
        case NETSYNC_ERR_VALIDATION:
        case NETSYNC_ERR_IO:
        case NETSYNC_ERR_ARGUMENT: return kExitValidation;
        case NETSYNC_ERR_RUNTIME: return kExitRuntime;
    }
    return kExitRuntime;
}

ScenarioPtr load(const std::string& path, int& code) {
    netsync_scenario* raw = nullptr;
    const auto status = netsync_scenario_load(path.c_str(), &raw);
    if (status != NETSYNC_OK) {
        std::cerr << path << ": " << netsync_last_error() << "\n";
        code = exit_code(status);
        return nullptr;
    }
    code = kExitOk;
    return ScenarioPtr(raw);
}

bool write_file(const std::string& path, const char* data, std::size_t size) {
    std::ofstream out(path, std::ios::binary);
    out.write(data, static_cast<std::streamsize>(size));
    return static_cast<bool>(out);
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* classification_name(netsync_extremum_kind k) {
    switch (k) {
        case NETSYNC_EXTREMUM_LOCAL_MAXIMUM: return "local_maximum";
        case NETSYNC_EXTREMUM_LOCAL_MINIMUM: return "local_minimum";
        case NETSYNC_EXTREMUM_NONE: return "none";
    }
    return "none";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"netsync: discrete-event simulator for network clock synchronization"};
    app.require_subcommand(1);
    app.set_version_flag("--version", netsync_version());

    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::string trace_path;
    std::string metrics_path;
    auto* run = app.add_subcommand("run", "Run a scenario and write its trace and metrics");
    run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    run->add_option("--seed", seed, "Random seed (defaults to the scenario's config.seed)");
    run->add_option("--trace", trace_path, "Write the line-delimited trace here");
    run->add_option("--metrics", metrics_path, "Write the metrics JSON here (default: stdout)");

    double beta = 0.0;
    double gamma = 0.0;
    double alpha0 = 0.0;
    std::vector<double> at_times;
    auto* analyze = app.add_subcommand("analyze-clock", "Extremum analysis of a quadratic clock offset");
    analyze->add_option("--beta", beta, "Frequency offset (s/s)")->required();
    analyze->add_option("--gamma", gamma, "Frequency drift (1/s)")->required();
    analyze->add_option("--alpha0", alpha0, "Initial offset (s)");
    analyze->add_option("--at", at_times, "Also print the offset at these wall times (s)");

    double dot_time = 0.0;
    std::string dot_output;
    auto* dot = app.add_subcommand("export-dot", "Write a Graphviz DOT snapshot of the topology");
    dot->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    dot->add_option("--time", dot_time, "Snapshot wall time (s)");
    dot->add_option("--seed", seed, "Random seed (defaults to the scenario's config.seed)");
    dot->add_option("--output", dot_output, "Output file (default: stdout)");

    auto* validate = app.add_subcommand("validate", "Check a scenario file and list every problem");
    validate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();

    std::string trace_a;
    std::string trace_b;
    auto* diff = app.add_subcommand("diff-trace", "Compare two traces (exit 0 identical, 1 different)");
    diff->add_option("a", trace_a, "Baseline trace")->required();
    diff->add_option("b", trace_b, "Other trace")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    if (*run) {
        int code = 0;
        auto scenario = load(scenario_path, code);
        if (!scenario) return code;
        netsync_run* raw = nullptr;
        const auto status = netsync_run_create(scenario.get(), seed.value_or(netsync_scenario_seed(scenario.get())), &raw);
        RunPtr result(raw);
        if (!result) {
            std::cerr << "run failed: " << netsync_last_error() << "\n";
            return exit_code(status);
        }
        std::size_t len = 0;
        if (!trace_path.empty()) {
            const char* trace = netsync_run_trace(result.get(), &len);
            if (!write_file(trace_path, trace, len)) {
                std::cerr << "cannot write " << trace_path << "\n";
                return kExitRuntime;
            }
        }
        const char* metrics = netsync_run_metrics(result.get(), &len);
        if (metrics_path.empty()) {
            std::cout.write(metrics, static_cast<std::streamsize>(len));
        } else if (!write_file(metrics_path, metrics, len)) {
            std::cerr << "cannot write " << metrics_path << "\n";
            return kExitRuntime;
        }
        if (status != NETSYNC_OK) {
            std::cerr << "run failed: " << netsync_last_error() << "\n";
            return exit_code(status);
        }
        return kExitOk;
    }

    if (*analyze) {
        netsync_extremum r{};
        netsync_analyze_clock(beta, gamma, &r);
        std::printf("beta: %.17g\ngamma: %.17g\n", beta, gamma);
        std::printf("has_extremum: %s\n", r.has_extremum ? "true" : "false");
        std::printf("classification: %s\n", classification_name(r.classification));
        std::printf("concavity: %.17g\n", r.concavity);
        if (r.has_extremum) {
            double offset = 0.0;
            netsync_clock_offset(alpha0, beta, gamma, r.t_star_s, &offset);
            std::printf("t_star_s: %.17g\n", r.t_star_s);
            std::printf("offset_at_t_star_s: %.17g\n", offset);
        }
        for (double t : at_times) {
            double offset = 0.0;
            netsync_clock_offset(alpha0, beta, gamma, t, &offset);
            std::printf("offset_at %.17g s: %.17g\n", t, offset);
        }
        return kExitOk;
    }

    if (*dot) {
        int code = 0;
        auto scenario = load(scenario_path, code);
        if (!scenario) return code;
        char* raw = nullptr;
        const auto status = netsync_export_dot(scenario.get(), dot_time, seed.value_or(netsync_scenario_seed(scenario.get())), &raw);
        if (status != NETSYNC_OK) {
            std::cerr << netsync_last_error() << "\n";
            return exit_code(status);
        }
        StringPtr text(raw);
        if (dot_output.empty()) {
            std::cout << text.get();
        } else if (!write_file(dot_output, text.get(), std::char_traits<char>::length(text.get()))) {
            std::cerr << "cannot write " << dot_output << "\n";
            return kExitRuntime;
        }
        return kExitOk;
    }

    if (*validate) {
        int code = 0;
        auto scenario = load(scenario_path, code);
        if (!scenario) return code;
        std::cout << scenario_path << ": ok\n";
        return kExitOk;
    }

    if (*diff) {
        const auto a = read_file(trace_a);
        const auto b = read_file(trace_b);
        if (!a || !b) {
            std::cerr << "cannot read " << (a ? trace_b : trace_a) << "\n";
            return kExitRuntime;
        }
        int identical = 0;
        char* raw = nullptr;
        const auto status = netsync_diff_traces(a->c_str(), b->c_str(), &identical, &raw);
        if (status != NETSYNC_OK) {
            std::cerr << netsync_last_error() << "\n";
            return kExitRuntime;
        }
        StringPtr report(raw);
        std::cout << report.get();
        return identical ? kExitOk : 1;
    }
    return kExitOk;
}
