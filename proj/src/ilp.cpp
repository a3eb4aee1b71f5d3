#include "ccred/ilp.hpp"

#include <algorithm>
#include <sstream>

namespace ccred {

int IlpModel::z_var(int j, int i) const {
  auto it = std::lower_bound(nested_pairs.begin(), nested_pairs.end(),
                             std::make_pair(j, i));
  return num_x() + static_cast<int>(it - nested_pairs.begin());
}

std::string IlpModel::var_name(int var) const {
  if (var < num_x()) return "x" + std::to_string(var);
  const auto& [j, i] = nested_pairs[var - num_x()];
  return "z_" + std::to_string(j) + "_" + std::to_string(i);
}

IlpModel build_model(const ConflictGraph& graph, int tau) {
  IlpModel model;
  model.m = graph.extraction_count();
  model.tau = tau;
  model.nodes = graph.nodes;
  model.nested_pairs = graph.nested_pairs;
  model.conflict_pairs = graph.conflict_pairs;

  for (const auto& [i, j] : model.conflict_pairs) {
    IlpConstraint c;
    c.tag = ConstraintTag::Conflict;
    c.name = "conflict_" + std::to_string(i) + "_" + std::to_string(j);
    c.lhs = {{1, i}, {1, j}};
    c.sense = '<';
    c.rhs = 1;
    model.constraints.push_back(std::move(c));
  }

  for (int i = 0; i <= model.m; ++i) {
    IlpConstraint c;
    c.tag = ConstraintTag::Limit;
    c.name = "limit_" + std::to_string(i);
    const SequenceMetrics& mi = model.nodes[i].metrics;
    c.lhs.push_back({mi.iota + mi.nu, i});
    for (const auto& [j, tgt] : model.nested_pairs) {
      if (tgt != i) continue;
      c.lhs.push_back({-model.removal_coef(j, i), model.z_var(j, i)});
    }
    c.sense = '<';
    c.rhs = tau;
    model.constraints.push_back(std::move(c));
  }

  for (const auto& [j, i] : model.nested_pairs) {
    IlpConstraint c;
    c.tag = ConstraintTag::ZDef;
    c.name = "zdef_" + std::to_string(j) + "_" + std::to_string(i);
    std::vector<int> between;
    for (const auto& [l, tgt] : model.nested_pairs) {
      if (tgt == i && l != j && graph.is_nested(j, l)) between.push_back(l);
    }
    c.lhs.push_back({1 + static_cast<long long>(between.size()),
                     model.z_var(j, i)});
    c.lhs.push_back({-1, j});
    for (int l : between) c.lhs.push_back({1, l});
    c.sense = '<';
    c.rhs = static_cast<long long>(between.size());
    model.constraints.push_back(std::move(c));
  }

  IlpConstraint root;
  root.tag = ConstraintTag::Root;
  root.name = "root";
  root.lhs = {{1, 0}};
  root.sense = '=';
  root.rhs = 1;
  model.constraints.push_back(std::move(root));

  return model;
}

namespace {

void append_terms(std::ostringstream& out, const IlpModel& model,
                  const std::vector<IlpTerm>& terms) {
  bool first = true;
  for (const IlpTerm& t : terms) {
    long long coef = t.coef;
    if (coef == 0) continue;
    if (first) {
      if (coef < 0) out << "- ";
    } else {
      out << (coef < 0 ? " - " : " + ");
    }
    long long mag = coef < 0 ? -coef : coef;
    if (mag != 1) out << mag << " ";
    out << model.var_name(t.var);
    first = false;
  }
  if (first) out << "0";
}

}  // namespace

std::string export_lp(const IlpModel& model) {
  std::ostringstream out;
  out << "Minimize\n obj: ";
  if (model.m == 0) {
    out << "0";
  } else {
    for (int i = 1; i <= model.m; ++i) {
      if (i > 1) out << " + ";
      out << "x" << i;
    }
  }
  out << "\nSubject To\n";
  for (const IlpConstraint& c : model.constraints) {
    out << " " << c.name << ": ";
    append_terms(out, model, c.lhs);
    out << (c.sense == '=' ? " = " : " <= ") << c.rhs << "\n";
  }
  out << "Binary\n";
  for (int v = 0; v < model.num_vars(); ++v) {
    out << " " << model.var_name(v) << "\n";
  }
  out << "End\n";
  return out.str();
}

}  // namespace ccred
