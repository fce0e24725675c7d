#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "netsync/clock.hpp"
#include "netsync/scenario.hpp"

namespace netsync {

/// Graphviz DOT snapshot of the topology at wall time t. Nodes are sorted by
/// id and labeled with kind and clock offset; links carry bandwidth, distance
/// and medium. Inactive routers are drawn dashed red, routers under an
/// added-delay hijack or DDoS orange.
std::string export_graph(const Scenario& scenario, SimTime t, std::uint64_t seed);

/// Same, using the given clock states (e.g. the final clocks of a run).
std::string export_graph(const Scenario& scenario, const std::map<std::string, SoftwareClock>& clocks, SimTime t,
                         std::uint64_t seed);

}  // namespace netsync
