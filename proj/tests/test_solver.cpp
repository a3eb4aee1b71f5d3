#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ccred/oracle.hpp"
#include "ccred/solver.hpp"
#include "fixtures.hpp"

using namespace ccred;
using namespace ccred::testing;

namespace {

struct HookModel {
  HookFixture fx;
  ConflictGraph graph;
  IlpModel model;
  // node ids by role
  int A, B, C, D, E, F, G, H, I, J;

  explicit HookModel(int tau = 15)
      : fx(load_hook()),
        graph(build_graph(build_cache(fx.ann))),
        model(build_model(graph, tau)) {
    auto id_of = [&](Span s) {
      for (std::size_t i = 0; i < graph.nodes.size(); ++i)
        if (graph.nodes[i].span == s) return static_cast<int>(i);
      return -1;
    };
    A = id_of(fx.span(fx.foreach_stmt));
    B = id_of(fx.span(fx.outer_if));
    C = id_of(fx.run_span(fx.s2, fx.s4));
    D = id_of(fx.run_span(fx.s2, fx.s5));
    E = id_of(fx.run_span(fx.s3, fx.s4));
    F = id_of(fx.run_span(fx.s3, fx.s5));
    G = id_of(fx.span(fx.s4));
    H = id_of(fx.run_span(fx.s4, fx.s5));
    I = id_of(fx.span(fx.inner_for));
    J = id_of(fx.span(fx.s5));
  }

  XAssignment x_for(std::initializer_list<int> selected) const {
    XAssignment x(model.m + 1, 0);
    x[0] = 1;
    for (int id : selected) x[id] = 1;
    return x;
  }

  std::uint8_t z(const std::vector<std::uint8_t>& zs, int j, int i) const {
    return zs[model.z_var(j, i) - model.num_x()];
  }
};

// Disjoint extraction nodes under a body of the given complexity; every
// node removes `each` and becomes a method of complexity `each`.
IlpModel flat_model(int count, int body, int each, int tau) {
  ConflictGraph graph;
  graph.nodes.push_back(GraphNode{
      Span{0, 100000}, SequenceMetrics{body, 0, 0, 0, body, body}});
  for (int i = 1; i <= count; ++i) {
    graph.nodes.push_back(
        GraphNode{Span{i * 100, i * 100 + 50},
                  SequenceMetrics{each, 0, 0, 0, each, each}});
    graph.nested_pairs.emplace_back(i, 0);
  }
  return build_model(graph, tau);
}

// Like flat_model, but neighbors overlap pairwise, so selections form an
// independent set of a path. Infeasibility caused by conflicts is invisible
// to the optimistic bound and forces real enumeration.
IlpModel chain_model(int count, int body, int each, int tau) {
  ConflictGraph graph;
  graph.nodes.push_back(GraphNode{
      Span{0, 100000}, SequenceMetrics{body, 0, 0, 0, body, body}});
  for (int i = 1; i <= count; ++i) {
    graph.nodes.push_back(
        GraphNode{Span{i * 10, i * 10 + 15},
                  SequenceMetrics{each, 0, 0, 0, each, each}});
    graph.nested_pairs.emplace_back(i, 0);
    if (i > 1) graph.conflict_pairs.emplace_back(i - 1, i);
  }
  return build_model(graph, tau);
}

}  // namespace

TEST_CASE("derive_z: selecting the outer if sets only its pair into node 0") {
  HookModel hm;
  auto z = derive_z(hm.model, hm.x_for({hm.B}));
  for (std::size_t p = 0; p < hm.model.nested_pairs.size(); ++p) {
    const auto& [j, i] = hm.model.nested_pairs[p];
    if (i == 0) CHECK(static_cast<int>(z[p]) == (j == hm.B ? 1 : 0));
  }
}

TEST_CASE("derive_z: nothing selected means all z into node 0 are zero") {
  HookModel hm;
  auto z = derive_z(hm.model, hm.x_for({}));
  for (std::size_t p = 0; p < hm.model.nested_pairs.size(); ++p)
    CHECK(z[p] == 0);
}

TEST_CASE("derive_z on a chain: the middle masks the inner") {
  HookModel hm;
  // I inside G inside (C, ..., 0): select I and G
  auto z = derive_z(hm.model, hm.x_for({hm.I, hm.G}));
  CHECK(hm.z(z, hm.I, hm.G) == 1);
  CHECK(hm.z(z, hm.I, 0) == 0);  // G sits strictly between
  CHECK(hm.z(z, hm.G, 0) == 1);
  CHECK(hm.z(z, hm.I, hm.C) == 0);  // G between I and C as well
}

TEST_CASE("evaluate: hook with the outer if extracted") {
  HookModel hm;
  Evaluation eval = evaluate(hm.model, hm.x_for({hm.B}));
  CHECK(eval.feasible);
  CHECK(eval.limit_lhs[0] == 1);  // 16 - 15
  CHECK(eval.limit_lhs[hm.B] == 15);
}

TEST_CASE("evaluate: empty selection leaves the body over threshold") {
  HookModel hm;
  Evaluation eval = evaluate(hm.model, hm.x_for({}));
  CHECK_FALSE(eval.feasible);
  CHECK(eval.limit_lhs[0] == 16);
}

TEST_CASE("evaluate: conflicting selections are infeasible") {
  HookModel hm;
  Evaluation eval = evaluate(hm.model, hm.x_for({hm.C, hm.F}));
  CHECK_FALSE(eval.feasible);
}

TEST_CASE("solve: hook is Optimal with one extraction, the outer if") {
  HookModel hm;
  SolveResult result = solve(hm.model, 300.0);
  CHECK(result.status == SolveStatus::Optimal);
  CHECK(result.objective == 1);
  REQUIRE(result.selected.size() == 1);
  CHECK(result.selected[0] == hm.B);
  CHECK(result.nodes_explored > 0);
}

TEST_CASE("solve: lone over-threshold body is Infeasible") {
  IlpModel model = flat_model(0, 20, 0, 15);
  SolveResult result = solve(model, 300.0);
  CHECK(result.status == SolveStatus::Infeasible);
  CHECK(result.selected.empty());
}

TEST_CASE("solve: compliant body is Optimal with nothing selected") {
  IlpModel model = flat_model(3, 12, 3, 15);
  SolveResult result = solve(model, 300.0);
  CHECK(result.status == SolveStatus::Optimal);
  CHECK(result.objective == 0);
}

TEST_CASE("solve under a tiny limit: timeout statuses only") {
  // feasible instance: needs 30 of 60 removals; proving the optimum dwarfs
  // a millisecond, but the first dive already finds an incumbent
  SolveResult feasible = solve(flat_model(60, 100, 3, 10), 0.001);
  CHECK((feasible.status == SolveStatus::Feasible ||
         feasible.status == SolveStatus::Unknown));

  // conflict-bound instance: 93 of removal needed, at most 30 non-adjacent
  // nodes (90) fit, so no incumbent ever appears and nothing prunes early
  SolveResult unknown = solve(chain_model(60, 100, 3, 7), 0.001);
  CHECK((unknown.status == SolveStatus::Feasible ||
         unknown.status == SolveStatus::Unknown));
}

TEST_CASE("per-node pruning does not change completed outcomes") {
  // the same chain instance with a workable threshold completes and returns
  // the alternating selection
  SolveResult done = solve(chain_model(12, 30, 3, 12), 300.0);
  CHECK(done.status == SolveStatus::Optimal);
  CHECK(done.objective == 6);  // (30 - 12) / 3
}

TEST_CASE("solve is deterministic") {
  HookModel hm;
  SolveResult a = solve(hm.model, 300.0);
  SolveResult b = solve(hm.model, 300.0);
  CHECK(a.status == b.status);
  CHECK(a.objective == b.objective);
  CHECK(a.selected == b.selected);
  CHECK(a.nodes_explored == b.nodes_explored);
}

TEST_CASE("soundness: returned selections always evaluate feasible") {
  for (unsigned seed = 1; seed <= 60; ++seed) {
    auto unit = parse(SourceFile::from_text("gen", generate_method(seed, 3, 3)));
    const MethodDecl* m =
        find_method(unit, "Gen" + std::to_string(seed) + "#run");
    auto ann = annotate_method(unit, *m);
    if (ann.sscc == 0) continue;
    ConflictGraph graph = build_graph(build_cache(ann));
    for (int tau : {1, ann.sscc / 2, 15}) {
      if (tau < 1) continue;
      IlpModel model = build_model(graph, tau);
      SolveResult result = solve(model, 300.0);
      if (result.status == SolveStatus::Optimal ||
          result.status == SolveStatus::Feasible) {
        XAssignment x(model.m + 1, 0);
        x[0] = 1;
        for (int id : result.selected) x[id] = 1;
        CHECK(evaluate(model, x).feasible);
      }
    }
  }
}
