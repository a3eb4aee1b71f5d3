#pragma once

#include <string>

#include "ccred/extraction.hpp"
#include "ccred/metrics.hpp"
#include "ccred/parser.hpp"

#ifndef CCRED_TEST_DATA_DIR
#error "CCRED_TEST_DATA_DIR must be defined by the build"
#endif

namespace ccred::testing {

inline std::string data_path(const std::string& name) {
  return std::string(CCRED_TEST_DATA_DIR) + "/" + name;
}

// The illustrating fixture: a 16-complexity method with two top-level
// statements (a for-each and an if whose block holds S1..S5).
struct HookFixture {
  CompilationUnit unit;
  const MethodDecl* hook = nullptr;
  AnnotatedMethod ann;
  NodeId foreach_stmt = kInvalidNode;
  NodeId outer_if = kInvalidNode;
  NodeId s1 = kInvalidNode;  // if (lastMessage.equals(info)) return;
  NodeId s2 = kInvalidNode;  // lastMessage = info;
  NodeId s3 = kInvalidNode;  // boolean print = all;
  NodeId s4 = kInvalidNode;  // if (!all && ...) { for ... }
  NodeId s5 = kInvalidNode;  // if (print) print(...);
  NodeId inner_for = kInvalidNode;
  NodeId innermost_if = kInvalidNode;

  Span span(NodeId id) const { return unit.node(id).span; }
  Span run_span(NodeId first, NodeId last) const {
    return Span{span(first).begin, span(last).end};
  }
};

inline HookFixture load_hook() {
  HookFixture fx;
  fx.unit = parse(SourceFile::load(data_path("EZInjection.java")));
  fx.hook = find_method(fx.unit, "EZInjection#hook");
  REQUIRE(fx.hook != nullptr);
  fx.ann = annotate_method(fx.unit, *fx.hook);
  const auto& top = fx.unit.node(fx.hook->body).children;
  REQUIRE(top.size() == 2);
  fx.foreach_stmt = top[0];
  fx.outer_if = top[1];
  const auto& block = fx.unit.node(fx.unit.node(fx.outer_if).children[1]);
  REQUIRE(block.children.size() == 5);
  fx.s1 = block.children[0];
  fx.s2 = block.children[1];
  fx.s3 = block.children[2];
  fx.s4 = block.children[3];
  fx.s5 = block.children[4];
  fx.inner_for =
      fx.unit.node(fx.unit.node(fx.s4).children[1]).children[0];
  fx.innermost_if =
      fx.unit.node(fx.unit.node(fx.inner_for).children[2]).children[0];
  return fx;
}

struct MetricRow {
  int lambda, iota, nu, mu, ccr, nmcc;
};

// The six annotated constructs of the fixture, outermost to innermost.
inline constexpr MetricRow kHookConstructTuples[6] = {
    {0, 1, 0, 0, 1, 1},    // top-level for-each
    {0, 7, 8, 5, 15, 15},  // outer if
    {1, 1, 0, 1, 2, 1},    // early-return if
    {1, 4, 3, 3, 10, 7},   // if with && chain
    {2, 2, 1, 2, 7, 3},    // inner for-each
    {3, 1, 0, 1, 4, 1},    // innermost if
};

enum class ReasonKind { Ok, ReturnFlow, JumpTarget };

struct CacheRow {
  bool feasible;
  ReasonKind reason;
  int params, ccr, nmcc, iota, nu, mu, lambda;
};

// The 17 cache rows in (start, end) order; offsets and LOC are
// layout-dependent and deliberately absent.
inline constexpr CacheRow kHookCacheRows[17] = {
    {true, ReasonKind::Ok, 1, 1, 1, 1, 0, 0, 0},           // {for-each}
    {true, ReasonKind::Ok, 1, 16, 16, 8, 8, 5, 0},         // whole body
    {true, ReasonKind::Ok, 1, 15, 15, 7, 8, 5, 0},         // {outer if}
    {false, ReasonKind::ReturnFlow, 0, 2, 1, 1, 0, 1, 1},  // S1
    {false, ReasonKind::ReturnFlow, 0, 2, 1, 1, 0, 1, 1},  // S1..S2
    {false, ReasonKind::ReturnFlow, 0, 2, 1, 1, 0, 1, 1},  // S1..S3
    {false, ReasonKind::ReturnFlow, 0, 12, 8, 5, 3, 4, 1}, // S1..S4
    {false, ReasonKind::ReturnFlow, 0, 14, 9, 6, 3, 5, 1}, // S1..S5
    {true, ReasonKind::Ok, 1, 10, 7, 4, 3, 3, 1},          // S2..S4
    {true, ReasonKind::Ok, 1, 12, 8, 5, 3, 4, 1},          // S2..S5
    {true, ReasonKind::Ok, 1, 10, 7, 4, 3, 3, 1},          // S3..S4
    {true, ReasonKind::Ok, 1, 12, 8, 5, 3, 4, 1},          // S3..S5
    {true, ReasonKind::Ok, 2, 10, 7, 4, 3, 3, 1},          // S4
    {true, ReasonKind::Ok, 2, 12, 8, 5, 3, 4, 1},          // S4..S5
    {true, ReasonKind::Ok, 2, 7, 3, 2, 1, 2, 2},           // inner for
    {false, ReasonKind::JumpTarget, 0, 4, 1, 1, 0, 1, 3},  // innermost if
    {true, ReasonKind::Ok, 2, 2, 1, 1, 0, 1, 1},           // S5
};

inline ReasonKind classify_reason(const std::string& reason) {
  if (reason == kReasonOk) return ReasonKind::Ok;
  if (reason == kReasonReturnFlow) return ReasonKind::ReturnFlow;
  if (reason == kReasonJumpTarget) return ReasonKind::JumpTarget;
  REQUIRE_MESSAGE(false, "unknown reason: " << reason);
  return ReasonKind::Ok;
}

}  // namespace ccred::testing
