#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ccred/extraction.hpp"

namespace ccred {

// Conflict graph over feasible extractions. Node 0 stands for the whole
// method body; nodes 1..m are the feasible cache entries (whole-body run
// excluded), ordered by (start, end).
struct GraphNode {
  Span span;
  SequenceMetrics metrics;
};

struct ConflictGraph {
  std::string method_id;
  std::vector<GraphNode> nodes;  // [0] = whole body
  // (j, i): j nested in i. Full transitive containment, sorted.
  std::vector<std::pair<int, int>> nested_pairs;
  // Unordered conflicts stored as (min, max), sorted.
  std::vector<std::pair<int, int>> conflict_pairs;

  int extraction_count() const { return static_cast<int>(nodes.size()) - 1; }
  bool is_nested(int j, int i) const;
  // d_ji = lambda_j - lambda_i, defined for nested pairs.
  int nesting_distance(int j, int i) const {
    return nodes[j].metrics.lambda - nodes[i].metrics.lambda;
  }
};

// True iff a is a proper subset of b (shared endpoints allowed).
bool contains(Span a, Span b);

// True iff the spans intersect and neither contains the other.
bool in_conflict(Span a, Span b);

ConflictGraph build_graph(const RefactoringCache& cache);

// Child -> parent edges of the containment order; pairs absent from the
// reduction are implied transitively.
std::vector<std::pair<int, int>> transitive_reduction(
    const ConflictGraph& graph);

// DOT rendering. Vertices are labeled "[s, e] (CCR, iota, nu, mu, lambda)";
// node 0 gets a doubled periphery; conflict edges are red and undirected.
// `reduced` draws only the transitive reduction of the nested relation.
std::string to_dot(const ConflictGraph& graph, bool reduced);

}  // namespace ccred
