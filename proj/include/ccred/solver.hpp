#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccred/ilp.hpp"

namespace ccred {

enum class SolveStatus { Optimal, Feasible, Infeasible, Unknown };

const char* solve_status_name(SolveStatus status);

// x by node id (0..m), values 0/1; x[0] must be 1.
using XAssignment = std::vector<std::uint8_t>;

// z_ji = 1 iff x_j = 1 and no selected node lies strictly between j and i.
// Indexed like model.nested_pairs.
std::vector<std::uint8_t> derive_z(const IlpModel& model,
                                   const XAssignment& x);

struct Evaluation {
  bool feasible = false;
  // Limit left-hand side per node under the derived z; for a selected node
  // this is the final complexity of the method it becomes.
  std::vector<long long> limit_lhs;
};

Evaluation evaluate(const IlpModel& model, const XAssignment& x);

struct SolveResult {
  SolveStatus status = SolveStatus::Unknown;
  std::vector<int> selected;  // extraction node ids with x_i = 1, sorted
  int objective = 0;
  long long nodes_explored = 0;
  double elapsed_seconds = 0.0;
};

// Exact depth-first implicit enumeration over x_1..x_m; z is always derived.
// Branch order: descending CCR, ties by ascending start offset; the include
// branch is explored first. Pruning: conflict propagation, incumbent
// cardinality bound, and an optimistic Limit(0) cut assuming every still
// selectable node gets extracted. The wall clock is checked every 1024
// search nodes.
SolveResult solve(const IlpModel& model, double time_limit_seconds);

}  // namespace ccred
