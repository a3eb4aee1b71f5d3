#pragma once

#include <string>
#include <vector>

#include "ccred/graph.hpp"

namespace ccred {

enum class ConstraintTag { Conflict, Limit, ZDef, Root };

struct IlpTerm {
  long long coef = 0;
  int var = 0;  // variable id: x_i = i; z variables follow, see IlpModel
};

struct IlpConstraint {
  ConstraintTag tag = ConstraintTag::Root;
  std::string name;
  std::vector<IlpTerm> lhs;
  char sense = '<';  // '<' means <=, '=' means equality
  long long rhs = 0;
};

// 0-1 program over x_0..x_m (x_i = 1 iff extraction i is applied; x_0 is the
// method itself and is pinned to 1) and z_ji per containment pair (z_ji = 1
// iff j is extracted and nothing strictly between j and i is).
//
// Objective: minimize x_1 + ... + x_m.
// Conflict:  x_i + x_j <= 1 per conflict pair.
// Limit(i):  (iota_i+nu_i) x_i - sum_j (iota_j+nu_j+d_ji*mu_j) z_ji <= tau.
// ZDef(j,i): (1+|L|) z_ji - x_j + sum_{l in L} x_l <= |L|,
//            L = nodes strictly between j and i.
// Root:      x_0 = 1.
struct IlpModel {
  int m = 0;  // number of extraction nodes
  int tau = 0;
  std::vector<GraphNode> nodes;
  std::vector<std::pair<int, int>> nested_pairs;    // sorted (j, i)
  std::vector<std::pair<int, int>> conflict_pairs;  // sorted (min, max)
  std::vector<IlpConstraint> constraints;

  int num_x() const { return m + 1; }
  int num_vars() const {
    return num_x() + static_cast<int>(nested_pairs.size());
  }
  int z_var(int j, int i) const;  // variable id of z_ji
  std::string var_name(int var) const;

  // Coefficient of z_ji in Limit(i): the complexity removed from sequence i
  // when j is extracted directly out of it.
  long long removal_coef(int j, int i) const {
    const SequenceMetrics& mj = nodes[j].metrics;
    int d = nodes[j].metrics.lambda - nodes[i].metrics.lambda;
    return mj.iota + mj.nu + static_cast<long long>(d) * mj.mu;
  }
};

IlpModel build_model(const ConflictGraph& graph, int tau);

// LP text with Minimize / Subject To / Binary / End sections. Variables are
// named x0..xm and z_j_i; constraints conflict_i_j, limit_i, zdef_j_i, root.
std::string export_lp(const IlpModel& model);

}  // namespace ccred
