#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "ccred/ilp.hpp"
#include "ccred/oracle.hpp"
#include "ccred/solver.hpp"
#include "fixtures.hpp"

using namespace ccred;
using namespace ccred::testing;

namespace {

IlpModel hook_model(int tau = 15) {
  HookFixture fx = load_hook();
  return build_model(build_graph(build_cache(fx.ann)), tau);
}

int count_constraints(const IlpModel& model, ConstraintTag tag) {
  int n = 0;
  for (const IlpConstraint& c : model.constraints)
    if (c.tag == tag) ++n;
  return n;
}

long long eval_constraint_lhs(const IlpConstraint& c,
                              const std::vector<long long>& values) {
  long long lhs = 0;
  for (const IlpTerm& t : c.lhs) lhs += t.coef * values[t.var];
  return lhs;
}

}  // namespace

TEST_CASE("hook model census: 50 variables, 54 constraints") {
  IlpModel model = hook_model();
  CHECK(model.m == 10);
  CHECK(model.num_vars() == 50);
  CHECK(model.constraints.size() == 54);
  CHECK(count_constraints(model, ConstraintTag::Conflict) == 3);
  CHECK(count_constraints(model, ConstraintTag::Limit) == 11);
  CHECK(count_constraints(model, ConstraintTag::ZDef) == 39);
  CHECK(count_constraints(model, ConstraintTag::Root) == 1);
}

TEST_CASE("census identity holds across the corpus") {
  for (unsigned seed = 1; seed <= 30; ++seed) {
    auto unit = parse(SourceFile::from_text("gen", generate_method(seed, 3, 3)));
    const MethodDecl* m =
        find_method(unit, "Gen" + std::to_string(seed) + "#run");
    auto ann = annotate_method(unit, *m);
    ConflictGraph graph = build_graph(build_cache(ann));
    IlpModel model = build_model(graph, 15);
    CHECK(model.num_vars() ==
          graph.extraction_count() + 1 +
              static_cast<int>(graph.nested_pairs.size()));
    CHECK(model.constraints.size() ==
          graph.conflict_pairs.size() + graph.nested_pairs.size() +
              static_cast<std::size_t>(graph.extraction_count()) + 1 + 1);
  }
}

TEST_CASE("a lone over-threshold body produces an unsatisfiable limit") {
  ConflictGraph graph;
  graph.nodes.push_back(GraphNode{Span{0, 100},
                                  SequenceMetrics{20, 0, 0, 0, 20, 20}});
  IlpModel model = build_model(graph, 15);
  REQUIRE(model.constraints.size() == 2);  // limit_0 and root
  const IlpConstraint& limit = model.constraints[0];
  CHECK(limit.tag == ConstraintTag::Limit);
  REQUIRE(limit.lhs.size() == 1);
  CHECK(limit.lhs[0].coef == 20);
  CHECK(limit.rhs == 15);  // 20 x0 <= 15 with x0 = 1 cannot hold
}

TEST_CASE("two-node graph specializes ZDef to z_j0 <= x_j") {
  ConflictGraph graph;
  graph.nodes.push_back(
      GraphNode{Span{0, 100}, SequenceMetrics{18, 0, 0, 0, 18, 18}});
  graph.nodes.push_back(
      GraphNode{Span{10, 50}, SequenceMetrics{6, 2, 2, 1, 10, 8}});
  graph.nested_pairs = {{1, 0}};
  IlpModel model = build_model(graph, 15);
  const IlpConstraint* zdef = nullptr;
  for (const IlpConstraint& c : model.constraints)
    if (c.tag == ConstraintTag::ZDef) zdef = &c;
  REQUIRE(zdef != nullptr);
  CHECK(zdef->name == "zdef_1_0");
  REQUIRE(zdef->lhs.size() == 2);
  CHECK(zdef->lhs[0].coef == 1);  // (1+|L|) z with L empty
  CHECK(zdef->lhs[1].coef == -1);
  CHECK(zdef->rhs == 0);
  // removal coefficient: nmcc + d*mu = 8 + 1*2
  CHECK(model.removal_coef(1, 0) == 10);
}

TEST_CASE("z-dominance: derived z satisfies every ZDef and minimizes limits") {
  int graphs_tested = 0;
  for (unsigned seed = 1; graphs_tested < 10 && seed <= 200; ++seed) {
    auto unit = parse(SourceFile::from_text("gen", generate_method(seed, 3, 3)));
    const MethodDecl* m =
        find_method(unit, "Gen" + std::to_string(seed) + "#run");
    auto ann = annotate_method(unit, *m);
    ConflictGraph graph = build_graph(build_cache(ann));
    if (graph.extraction_count() < 2 || graph.extraction_count() > 5 ||
        graph.nested_pairs.size() > 10)
      continue;
    ++graphs_tested;
    IlpModel model = build_model(graph, 10);
    const int m_count = model.m;
    const std::size_t pairs = model.nested_pairs.size();

    std::mt19937 rng(seed);
    for (int trial = 0; trial < 20; ++trial) {
      XAssignment x(m_count + 1, 0);
      x[0] = 1;
      for (int i = 1; i <= m_count; ++i) x[i] = rng() % 2;
      // respect conflicts so the assignment is meaningful
      bool conflicted = false;
      for (const auto& [a, b] : model.conflict_pairs)
        if (x[a] && x[b]) conflicted = true;
      if (conflicted) continue;

      auto z = derive_z(model, x);
      std::vector<long long> values(model.num_vars(), 0);
      for (int i = 0; i <= m_count; ++i) values[i] = x[i];
      for (std::size_t p = 0; p < pairs; ++p)
        values[model.num_x() + p] = z[p];

      // derived z satisfies every ZDef row
      for (const IlpConstraint& c : model.constraints) {
        if (c.tag != ConstraintTag::ZDef) continue;
        CHECK(eval_constraint_lhs(c, values) <= c.rhs);
      }

      // and no ZDef-feasible z gives a smaller Limit left-hand side
      Evaluation derived_eval = evaluate(model, x);
      for (std::uint64_t mask = 0; mask < (1ull << pairs); ++mask) {
        for (std::size_t p = 0; p < pairs; ++p)
          values[model.num_x() + p] = (mask >> p) & 1;
        bool zdef_ok = true;
        for (const IlpConstraint& c : model.constraints) {
          if (c.tag == ConstraintTag::ZDef &&
              eval_constraint_lhs(c, values) > c.rhs)
            zdef_ok = false;
        }
        if (!zdef_ok) continue;
        for (const IlpConstraint& c : model.constraints) {
          if (c.tag != ConstraintTag::Limit) continue;
          int node = std::stoi(c.name.substr(std::string("limit_").size()));
          CHECK(derived_eval.limit_lhs[node] <= eval_constraint_lhs(c, values));
        }
      }
    }
  }
  CHECK(graphs_tested == 10);
}

TEST_CASE("lp export: hook has 50 binary names and 54 subject-to rows") {
  std::string lp = export_lp(hook_model());

  std::istringstream in(lp);
  std::string line;
  int section = 0, rows = 0, names = 0;
  while (std::getline(in, line)) {
    if (line == "Minimize" || line == "Subject To" || line == "Binary" ||
        line == "End") {
      ++section;
      continue;
    }
    if (section == 2 && line.find(':') != std::string::npos) ++rows;
    if (section == 3 && !line.empty()) ++names;
  }
  CHECK(rows == 54);
  CHECK(names == 50);
  CHECK(lp.find(" root: x0 = 1") != std::string::npos);
  CHECK(lp.find("limit_0: 16 x0") != std::string::npos);
}

TEST_CASE("lp export is deterministic and handles the empty graph") {
  CHECK(export_lp(hook_model()) == export_lp(hook_model()));

  RefactoringCache cache;
  IlpModel empty = build_model(build_graph(cache), 15);
  std::string lp = export_lp(empty);
  CHECK(lp.find("obj: 0") != std::string::npos);
  CHECK(lp.find("root: x0 = 1") != std::string::npos);
}

TEST_CASE("limit coefficients for nested pairs are the removal amounts") {
  HookFixture fx = load_hook();
  ConflictGraph graph = build_graph(build_cache(fx.ann));
  IlpModel model = build_model(graph, 15);
  // against node 0 the removal equals the node's CCR
  for (int j = 1; j <= model.m; ++j)
    CHECK(model.removal_coef(j, 0) == graph.nodes[j].metrics.ccr);
}
