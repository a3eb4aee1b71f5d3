#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccred/extraction.hpp"
#include "ccred/graph.hpp"
#include "ccred/solver.hpp"

namespace ccred {

struct PlanEntry {
  int node_id = 0;  // conflict-graph node
  Span region;
  std::string name;  // new method name
  std::vector<DataflowFacts::Var> inputs;
  std::optional<DataflowFacts::Var> output;
  bool contains_return = false;
  bool all_paths_return = false;
  SequenceMetrics metrics;
  int predicted_sscc = 0;  // Limit LHS of this node under the solution
};

struct ExtractionPlan {
  std::string class_name;
  std::string method_id;    // find_method address
  std::string method_name;  // simple name, used for generated names
  // Innermost-first by containment, then by start offset; the k-th entry
  // becomes <method>_extracted_<k>.
  std::vector<PlanEntry> entries;
  int predicted_final_cc = 0;  // Limit LHS of node 0
};

// Decodes a solver result into concrete rewrite instructions.
// result.status must be Optimal or Feasible.
ExtractionPlan make_plan(const ConflictGraph& graph, const SolveResult& result,
                         const AnnotatedMethod& annotated);

struct MethodMeasurement {
  std::string name;
  int predicted = 0;
  int measured = 0;
};

struct RefactorOutcome {
  std::string text;  // rewritten source
  std::string class_name;
  std::vector<MethodMeasurement> methods;  // original first, then new ones
};

// Applies the plan to the source text: every selected region becomes a call
// to a fresh method appended after the originating one. Throws PlanConflict
// on overlapping non-nested regions and StaleOffsets when a region no longer
// matches statement boundaries.
RefactorOutcome apply_plan(const SourceFile& source,
                           const ExtractionPlan& plan);

struct VerifyReport {
  struct Failure {
    std::string method;
    int measured = 0;
    int predicted = 0;
    std::string what;
  };
  bool ok = false;
  std::vector<Failure> failures;
};

// Re-parses and re-measures every affected method; each must match its
// prediction and stay at or under tau.
VerifyReport verify(const RefactorOutcome& outcome, int tau);

}  // namespace ccred
