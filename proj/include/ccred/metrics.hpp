#pragma once

#include <vector>

#include "ccred/ast.hpp"

namespace ccred {

struct NodeAnnotation {
  int inherent = 0;        // the node's own +1 contributions
  int lambda = 0;          // nesting level of the node
  bool penalized = false;  // construct kind that receives a nesting penalty
};

// Metrics of a contiguous sibling-statement region.
//   iota  accumulated inherent component
//   nu    accumulated nesting relative to the region's own level
//   mu    penalized constructs at absolute nesting level >= 1
//   ccr   complexity removed from the enclosing method on extraction
//   nmcc  complexity of the new method created by the extraction
// Identities: ccr = mu*lambda + iota + nu; nmcc = iota + nu.
struct SequenceMetrics {
  int iota = 0;
  int nu = 0;
  int mu = 0;
  int lambda = 0;
  int ccr = 0;
  int nmcc = 0;

  bool operator==(const SequenceMetrics&) const = default;
};

struct AnnotatedMethod {
  const CompilationUnit* unit = nullptr;
  const MethodDecl* method = nullptr;
  std::vector<NodeAnnotation> ann;  // indexed by NodeId over the whole arena
  int sscc = 0;
  Span body_statements_span;  // first statement begin .. last statement end
};

// Walks the method body and assigns every node its inherent increment,
// nesting level and penalization flag per the cognitive complexity rules:
//  +1 inherent: if / else-if / else, ternary, switch, loops, each catch
//  clause, labeled break/continue, each maximal sequence of one binary
//  logical operator, each direct-recursion call site.
//  +lambda penalty: if, ternary, switch, loops, catch (never else/else-if,
//  logical sequences, jumps, recursion).
//  lambda rises inside branch bodies, ternary arms, case groups, loop
//  bodies and catch blocks; try/finally blocks do not raise it.
AnnotatedMethod annotate_method(const CompilationUnit& unit,
                                const MethodDecl& method);

int method_sscc(const AnnotatedMethod& annotated);

struct SiblingRun {
  NodeId container = kInvalidNode;
  int first = 0;  // indices into the container's statement list
  int last = 0;
  std::vector<NodeId> statements;
  int lambda = 0;
};

// Locates the contiguous sibling-statement run matching the span exactly.
// Throws RegionNotSiblingRun when the offsets do not delimit such a run.
SiblingRun find_sibling_run(const AnnotatedMethod& annotated, Span region);

SequenceMetrics region_metrics(const AnnotatedMethod& annotated, Span region);

// Metrics of a run given directly (no span lookup).
SequenceMetrics run_metrics(const AnnotatedMethod& annotated,
                            const std::vector<NodeId>& statements, int lambda);

}  // namespace ccred
