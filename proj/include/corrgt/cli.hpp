#pragma once

#include <iosfwd>
#include <string>

#include "corrgt/graph.hpp"

namespace corrgt {

/// Exit codes: 0 success, 1 validation error (bad flags, configs, inputs),
/// 2 runtime failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

/// "family:key=value,..." (e.g. "cycle:n=10", "grid:side=5",
/// "tree:n=50,seed=3") or a path to an edge-list file.
Graph parse_graph_argument(const std::string& arg);

}  // namespace corrgt
