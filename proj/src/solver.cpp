#include "ccred/solver.hpp"

#include <algorithm>
#include <chrono>
#include <optional>

namespace ccred {

const char* solve_status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Feasible: return "Feasible";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

bool is_nested_in(const IlpModel& model, int j, int i) {
  return std::binary_search(model.nested_pairs.begin(),
                            model.nested_pairs.end(), std::make_pair(j, i));
}

}  // namespace

std::vector<std::uint8_t> derive_z(const IlpModel& model,
                                   const XAssignment& x) {
  std::vector<std::uint8_t> z(model.nested_pairs.size(), 0);
  for (std::size_t p = 0; p < model.nested_pairs.size(); ++p) {
    const auto& [j, i] = model.nested_pairs[p];
    if (!x[j]) continue;
    bool masked = false;
    for (int l = 1; l <= model.m && !masked; ++l) {
      if (l == j || l == i || !x[l]) continue;
      if (is_nested_in(model, j, l) && is_nested_in(model, l, i)) masked = true;
    }
    if (!masked) z[p] = 1;
  }
  return z;
}

Evaluation evaluate(const IlpModel& model, const XAssignment& x) {
  Evaluation eval;
  eval.feasible = true;
  for (const auto& [a, b] : model.conflict_pairs) {
    if (x[a] && x[b]) eval.feasible = false;
  }

  std::vector<std::uint8_t> z = derive_z(model, x);
  eval.limit_lhs.assign(model.m + 1, 0);
  for (int i = 0; i <= model.m; ++i) {
    const SequenceMetrics& mi = model.nodes[i].metrics;
    long long lhs = x[i] ? mi.iota + mi.nu : 0;
    for (std::size_t p = 0; p < model.nested_pairs.size(); ++p) {
      const auto& [j, tgt] = model.nested_pairs[p];
      if (tgt != i || !z[p]) continue;
      lhs -= model.removal_coef(j, i);
    }
    eval.limit_lhs[i] = lhs;
    if (lhs > model.tau) eval.feasible = false;
  }
  return eval;
}

namespace {

class Searcher {
 public:
  Searcher(const IlpModel& model, double time_limit_seconds)
      : model_(model),
        start_(std::chrono::steady_clock::now()),
        limit_seconds_(time_limit_seconds) {
    for (int i = 1; i <= model_.m; ++i) order_.push_back(i);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      if (model_.nodes[a].metrics.ccr != model_.nodes[b].metrics.ccr)
        return model_.nodes[a].metrics.ccr > model_.nodes[b].metrics.ccr;
      return model_.nodes[a].span.begin < model_.nodes[b].span.begin;
    });
    conflicts_of_.assign(model_.m + 1, {});
    for (const auto& [a, b] : model_.conflict_pairs) {
      conflicts_of_[a].push_back(b);
      conflicts_of_[b].push_back(a);
    }
    assign_.assign(model_.m + 1, -1);
    assign_[0] = 1;
    // Desk-scale search nodes are cheap, so the clock is read every 1024 of
    // them; on oversized instances the pruning work per node grows with m^2
    // and the cadence tightens to keep the time limit honest.
    if (model_.m > 32) {
      long long mm = static_cast<long long>(model_.m) * model_.m;
      check_interval_ = std::max<long long>(1, (1 << 20) / mm);
    }
  }

  SolveResult run() {
    dfs(0);
    SolveResult result;
    result.nodes_explored = nodes_explored_;
    result.elapsed_seconds = elapsed();
    if (incumbent_) {
      result.selected = *incumbent_;
      result.objective = static_cast<int>(incumbent_->size());
      result.status =
          timed_out_ ? SolveStatus::Feasible : SolveStatus::Optimal;
    } else {
      result.status =
          timed_out_ ? SolveStatus::Unknown : SolveStatus::Infeasible;
    }
    return result;
  }

 private:
  const IlpModel& model_;
  std::chrono::steady_clock::time_point start_;
  double limit_seconds_;
  std::vector<int> order_;
  std::vector<std::vector<int>> conflicts_of_;
  std::vector<signed char> assign_;  // -1 open, 0 excluded, 1 selected
  std::vector<int> candidates_;      // scratch for the optimism cut
  int selected_count_ = 0;
  long long nodes_explored_ = 0;
  long long check_interval_ = 1024;
  bool timed_out_ = false;
  std::optional<std::vector<int>> incumbent_;

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

  // Best conceivable Limit(i) if every open or selected node were extracted:
  // only containment-maximal nodes below i contribute to the removal. The
  // relaxation ignores conflicts, so it never underestimates what a
  // completion could remove.
  bool limit_reachable(int i) const {
    long long removal = 0;
    for (int j : candidates_) {
      if (j == i || !is_nested_in(model_, j, i)) continue;
      bool maximal = true;
      for (int l : candidates_) {
        if (l == i || l == j || !is_nested_in(model_, l, i)) continue;
        if (is_nested_in(model_, j, l)) {
          maximal = false;
          break;
        }
      }
      if (maximal) removal += model_.removal_coef(j, i);
    }
    const SequenceMetrics& mi = model_.nodes[i].metrics;
    return mi.iota + mi.nu - removal <= model_.tau;
  }

  // Applied to the method body and to every selected node; pruning a subtree
  // whose best case already breaks a Limit row keeps the search exact.
  bool optimism_ok() {
    candidates_.clear();
    for (int i = 1; i <= model_.m; ++i)
      if (assign_[i] != 0) candidates_.push_back(i);
    if (!limit_reachable(0)) return false;
    for (int i = 1; i <= model_.m; ++i)
      if (assign_[i] == 1 && !limit_reachable(i)) return false;
    return true;
  }

  void leaf() {
    // full evaluation of a big leaf is itself costly; respect the limit
    if (model_.m > 32 && elapsed() > limit_seconds_) {
      timed_out_ = true;
      return;
    }
    XAssignment x(model_.m + 1, 0);
    x[0] = 1;
    for (int i = 1; i <= model_.m; ++i) x[i] = assign_[i] == 1 ? 1 : 0;
    if (!evaluate(model_, x).feasible) return;
    std::vector<int> selected;
    for (int i = 1; i <= model_.m; ++i)
      if (x[i]) selected.push_back(i);
    incumbent_ = std::move(selected);
  }

  void dfs(int depth) {
    if (timed_out_) return;
    ++nodes_explored_;
    if (nodes_explored_ % check_interval_ == 0 &&
        elapsed() > limit_seconds_) {
      timed_out_ = true;
      return;
    }
    if (incumbent_ &&
        selected_count_ >= static_cast<int>(incumbent_->size()))
      return;
    if (!optimism_ok()) return;
    if (depth == model_.m) {
      leaf();
      return;
    }
    int node = order_[depth];
    if (assign_[node] == 0) {  // already excluded by conflict propagation
      dfs(depth + 1);
      return;
    }

    assign_[node] = 1;
    ++selected_count_;
    std::vector<int> zeroed;
    for (int other : conflicts_of_[node]) {
      if (assign_[other] == -1) {
        assign_[other] = 0;
        zeroed.push_back(other);
      }
    }
    dfs(depth + 1);
    for (int other : zeroed) assign_[other] = -1;
    --selected_count_;
    assign_[node] = -1;
    if (timed_out_) return;

    assign_[node] = 0;
    dfs(depth + 1);
    assign_[node] = -1;
  }
};

}  // namespace

SolveResult solve(const IlpModel& model, double time_limit_seconds) {
  return Searcher(model, time_limit_seconds).run();
}

}  // namespace ccred
