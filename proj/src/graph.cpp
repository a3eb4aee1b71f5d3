#include "ccred/graph.hpp"

#include <algorithm>
#include <sstream>

namespace ccred {

bool contains(Span a, Span b) { return b.properly_contains(a); }

bool in_conflict(Span a, Span b) {
  return a.overlaps(b) && !contains(a, b) && !contains(b, a) && !(a == b);
}

bool ConflictGraph::is_nested(int j, int i) const {
  return std::binary_search(nested_pairs.begin(), nested_pairs.end(),
                            std::make_pair(j, i));
}

ConflictGraph build_graph(const RefactoringCache& cache) {
  ConflictGraph graph;
  graph.method_id = cache.method_id;

  GraphNode body;
  body.span = cache.body_span;
  for (const CacheEntry& e : cache.entries) {
    if (e.span() == cache.body_span) {
      body.metrics = SequenceMetrics{e.iota, e.nu, e.mu,
                                     e.lambda, e.ccr, e.nmcc};
    }
  }
  graph.nodes.push_back(body);

  for (const CacheEntry& e : cache.entries) {
    if (!e.feasible || e.span() == cache.body_span) continue;
    GraphNode node;
    node.span = e.span();
    node.metrics =
        SequenceMetrics{e.iota, e.nu, e.mu, e.lambda, e.ccr, e.nmcc};
    graph.nodes.push_back(node);
  }

  const int n = static_cast<int>(graph.nodes.size());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      if (contains(graph.nodes[j].span, graph.nodes[i].span))
        graph.nested_pairs.emplace_back(j, i);
      else if (j < i && in_conflict(graph.nodes[j].span, graph.nodes[i].span))
        graph.conflict_pairs.emplace_back(j, i);
    }
  }
  std::sort(graph.nested_pairs.begin(), graph.nested_pairs.end());
  std::sort(graph.conflict_pairs.begin(), graph.conflict_pairs.end());
  return graph;
}

std::vector<std::pair<int, int>> transitive_reduction(
    const ConflictGraph& graph) {
  std::vector<std::pair<int, int>> reduced;
  for (const auto& [j, i] : graph.nested_pairs) {
    bool has_intermediate = false;
    for (int l = 0; l < static_cast<int>(graph.nodes.size()); ++l) {
      if (l == j || l == i) continue;
      if (graph.is_nested(j, l) && graph.is_nested(l, i)) {
        has_intermediate = true;
        break;
      }
    }
    if (!has_intermediate) reduced.emplace_back(j, i);
  }
  return reduced;
}

std::string to_dot(const ConflictGraph& graph, bool reduced) {
  std::ostringstream out;
  out << "digraph conflict_graph {\n";
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const GraphNode& node = graph.nodes[i];
    const SequenceMetrics& m = node.metrics;
    out << "  n" << i << " [label=\"[" << node.span.begin << ", "
        << node.span.end << "] (" << m.ccr << ", " << m.iota << ", " << m.nu
        << ", " << m.mu << ", " << m.lambda << ")\"";
    if (i == 0) out << " peripheries=2";
    out << "];\n";
  }
  const auto nested =
      reduced ? transitive_reduction(graph) : graph.nested_pairs;
  for (const auto& [j, i] : nested) {
    out << "  n" << j << " -> n" << i << ";\n";
  }
  for (const auto& [a, b] : graph.conflict_pairs) {
    out << "  n" << a << " -> n" << b << " [dir=none, color=red];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace ccred
