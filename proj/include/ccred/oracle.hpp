#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccred/graph.hpp"
#include "ccred/solver.hpp"

namespace ccred {

inline constexpr int kOracleDefaultMaxNodes = 20;

struct OracleResult {
  SolveStatus status = SolveStatus::Infeasible;  // Optimal or Infeasible
  std::vector<int> selected;
  std::uint64_t subsets_checked = 0;
};

// Ground-truth by enumeration: subsets of the extraction nodes are tried in
// increasing cardinality; the first conflict-free subset keeping every
// resulting method at or under tau wins. The post-extraction arithmetic is
// re-derived here from the graph, independent of the ILP model path.
// Throws TooLargeError when the node count exceeds max_nodes.
OracleResult solve_exhaustive(const ConflictGraph& graph, int tau,
                              int max_nodes = kOracleDefaultMaxNodes);

// Deterministic pseudo-random method in the supported grammar: nested
// conditionals, loops, switches, logical chains, early returns and jumps,
// over integer locals with plausible def/use chains. Same seed, same text.
std::string generate_method(std::uint64_t seed, int max_depth = 4,
                            int max_width = 4);

}  // namespace ccred
