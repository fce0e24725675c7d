#include "netsync/diff.hpp"

#include <map>
#include <sstream>

#include "netsync/trace.hpp"

namespace netsync {

namespace {

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        out.push_back(text.substr(pos, end - pos));
        pos = end + 1;
    }
    return out;
}

struct Outcome {
    std::string algorithm;
    std::string status;
    std::optional<SimTime> precision;
};

std::map<std::uint64_t, Outcome> outcomes(const std::vector<TraceRecord>& trace) {
    std::map<std::uint64_t, Outcome> out;
    for (const auto& r : trace) {
        if (!r.sync) continue;
        auto& o = out[r.sync->sync_id];
        o.algorithm = r.sync->algorithm;
        if (r.sync->phase == "complete" || r.sync->phase == "aborted") {
            o.status = r.sync->phase;
            if (r.sync->phase == "complete") {
                SimTime worst = 0;
                for (const auto& [node, res] : r.sync->residuals) worst = std::max(worst, res < 0 ? -res : res);
                o.precision = worst;
            }
        } else if (o.status.empty()) {
            o.status = "incomplete";
        }
    }
    return out;
}

}  // namespace

TraceDiff diff_traces(std::string_view a, std::string_view b) {
    const auto ta = parse_trace(a);
    const auto tb = parse_trace(b);
    const auto la = lines_of(a);
    const auto lb = lines_of(b);

    TraceDiff d;
    d.records_a = ta.size();
    d.records_b = tb.size();
    d.identical = a == b;
    const std::size_t n = std::max(la.size(), lb.size());
    for (std::size_t i = 0; i < n; ++i) {
        const bool same = i < la.size() && i < lb.size() && la[i] == lb[i];
        if (same) continue;
        ++d.differing_lines;
        if (!d.first_difference) d.first_difference = i + 1;
    }

    const auto oa = outcomes(ta);
    const auto ob = outcomes(tb);
    std::map<std::uint64_t, SyncComparison> merged;
    for (const auto& [id, o] : oa) {
        auto& c = merged[id];
        c.sync_id = id;
        c.algorithm = o.algorithm;
        c.status_a = o.status;
        c.precision_a = o.precision;
    }
    for (const auto& [id, o] : ob) {
        auto& c = merged[id];
        c.sync_id = id;
        c.algorithm = o.algorithm;
        c.status_b = o.status;
        c.precision_b = o.precision;
    }
    for (auto& [id, c] : merged) {
        if (c.status_a.empty()) c.status_a = "missing";
        if (c.status_b.empty()) c.status_b = "missing";
        d.syncs.push_back(c);
    }
    return d;
}

std::string render(const TraceDiff& d) {
    std::ostringstream out;
    out << (d.identical ? "identical" : "different") << ": " << d.records_a << " vs " << d.records_b << " records";
    if (d.first_difference) out << ", first difference at line " << *d.first_difference << " (" << d.differing_lines << " differing lines)";
    out << "\n";
    for (const auto& c : d.syncs) {
        out << "sync " << c.sync_id << " " << c.algorithm << ": " << c.status_a << " / " << c.status_b;
        auto show = [&out](const std::optional<SimTime>& p) {
            if (p) {
                out << *p << " ps";
            } else {
                out << "-";
            }
        };
        out << "  precision ";
        show(c.precision_a);
        out << " / ";
        show(c.precision_b);
        if (c.precision_a && c.precision_b) out << "  (delta " << (*c.precision_b - *c.precision_a) << " ps)";
        out << "\n";
    }
    return out.str();
}

}  // namespace netsync
