#include "ccred/oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "ccred/errors.hpp"

namespace ccred {
namespace {

bool graph_nested(const ConflictGraph& graph, int j, int i) {
  return std::binary_search(graph.nested_pairs.begin(),
                            graph.nested_pairs.end(), std::make_pair(j, i));
}

long long removed_complexity(const ConflictGraph& graph, int j, int i) {
  const SequenceMetrics& mj = graph.nodes[j].metrics;
  int d = graph.nesting_distance(j, i);
  return mj.iota + mj.nu + static_cast<long long>(d) * mj.mu;
}

bool subset_feasible(const ConflictGraph& graph, int tau,
                     const std::vector<int>& subset) {
  for (const auto& [a, b] : graph.conflict_pairs) {
    bool has_a = std::find(subset.begin(), subset.end(), a) != subset.end();
    bool has_b = std::find(subset.begin(), subset.end(), b) != subset.end();
    if (has_a && has_b) return false;
  }

  // Final complexity of method i (0 = the original): subtract the outermost
  // selected sequences directly below it.
  auto final_sscc = [&](int i) {
    long long value = graph.nodes[i].metrics.nmcc;
    for (int j : subset) {
      if (j == i) continue;
      if (!graph_nested(graph, j, i)) continue;
      bool masked = false;
      for (int l : subset) {
        if (l == i || l == j) continue;
        if (graph_nested(graph, j, l) && graph_nested(graph, l, i)) {
          masked = true;
          break;
        }
      }
      if (!masked) value -= removed_complexity(graph, j, i);
    }
    return value;
  };

  if (final_sscc(0) > tau) return false;
  for (int i : subset) {
    if (final_sscc(i) > tau) return false;
  }
  return true;
}

}  // namespace

OracleResult solve_exhaustive(const ConflictGraph& graph, int tau,
                              int max_nodes) {
  const int m = graph.extraction_count();
  if (m > max_nodes) {
    throw TooLargeError("instance has " + std::to_string(m) +
                        " extraction nodes, oracle limit is " +
                        std::to_string(max_nodes));
  }

  OracleResult result;
  for (int k = 0; k <= m; ++k) {
    // combinations of node ids {1..m} of size k, lexicographic
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = i + 1;
    while (true) {
      ++result.subsets_checked;
      if (subset_feasible(graph, tau, subset)) {
        result.status = SolveStatus::Optimal;
        result.selected = subset;
        return result;
      }
      int pos = k - 1;
      while (pos >= 0 && subset[pos] == m - (k - 1 - pos)) --pos;
      if (pos < 0) break;
      ++subset[pos];
      for (int i = pos + 1; i < k; ++i) subset[i] = subset[i - 1] + 1;
    }
  }
  result.status = SolveStatus::Infeasible;
  return result;
}

// ---- synthetic corpus generator ----

namespace {

class MethodGenerator {
 public:
  MethodGenerator(std::uint64_t seed, int max_depth, int max_width)
      : rng_(seed),
        max_depth_(std::clamp(max_depth, 0, 6)),
        max_width_(std::clamp(max_width, 1, 6)),
        seed_(seed) {}

  std::string generate() {
    returns_int_ = pick(4) == 0;
    std::ostringstream out;
    out << "public class Gen" << seed_ << " {\n";
    out << "    static void sink(int v) {\n    }\n\n";
    out << "    static " << (returns_int_ ? "int" : "void")
        << " run(int a, int b, int c) {\n";
    scope_ = {"a", "b", "c"};
    std::string body = gen_statements(0, 2);
    out << body;
    if (returns_int_)
      out << "        return " << var() << ";\n";
    out << "    }\n";
    out << "}\n";
    return out.str();
  }

 private:
  std::mt19937_64 rng_;
  int max_depth_;
  int max_width_;
  std::uint64_t seed_;
  bool returns_int_ = false;
  int next_var_ = 0;
  int next_loop_ = 0;
  int next_exc_ = 0;
  int loop_depth_ = 0;
  std::vector<std::string> scope_;

  int pick(int n) { return static_cast<int>(rng_() % n); }

  std::string indent(int levels) const {
    return std::string(static_cast<std::size_t>(levels) * 4, ' ');
  }

  const std::string& var() {
    return scope_[static_cast<std::size_t>(pick(
        static_cast<int>(scope_.size())))];
  }

  std::string literal() { return std::to_string(pick(10)); }

  std::string atom() { return pick(3) == 0 ? literal() : var(); }

  // Every random draw happens in its own statement: operand evaluation
  // order inside an expression is unspecified and would break determinism.
  std::string arith(int depth = 0) {
    if (depth >= 2 || pick(3) == 0) return atom();
    static const char* ops[] = {" + ", " - ", " * ", " % "};
    std::string lhs = arith(depth + 1);
    std::string op = ops[pick(4)];
    std::string rhs;
    if (depth == 0 && pick(4) == 0) {
      rhs = "(" + arith(depth + 1) + ")";
    } else {
      rhs = atom();
    }
    return lhs + op + rhs;
  }

  std::string comparison() {
    static const char* ops[] = {" < ", " > ", " <= ", " >= ", " == ", " != "};
    std::string lhs = atom();
    std::string op = ops[pick(6)];
    std::string rhs = atom();
    return lhs + op + rhs;
  }

  std::string condition() {
    int terms = 1 + pick(3);
    std::string out = comparison();
    for (int i = 1; i < terms; ++i) {
      out += pick(2) == 0 ? " && " : " || ";
      if (pick(5) == 0)
        out += "!(" + comparison() + ")";
      else
        out += comparison();
    }
    return out;
  }

  std::string fresh_var() { return "x" + std::to_string(next_var_++); }

  std::string gen_statements(int depth, int base_indent) {
    int count = 1 + pick(max_width_);
    std::string out;
    for (int i = 0; i < count; ++i) out += gen_statement(depth, base_indent);
    return out;
  }

  std::string gen_statement(int depth, int ind) {
    const std::string pad = indent(ind);
    bool can_nest = depth < max_depth_;
    int choice = pick(can_nest ? 12 : 4);
    switch (choice) {
      case 0: {
        std::string name = fresh_var();
        std::string init = arith();
        scope_.push_back(name);
        return pad + "int " + name + " = " + init + ";\n";
      }
      case 1: {
        std::string target = var();
        std::string op = pick(3) == 0 ? " += " : " = ";
        std::string value = arith();
        return pad + target + op + value + ";\n";
      }
      case 2:
        return pad + "sink(" + arith() + ");\n";
      case 3: {
        if (loop_depth_ > 0 && pick(3) == 0)
          return pad + (pick(2) == 0 ? "break;\n" : "continue;\n");
        std::string target = var();
        if (pick(3) == 0) {
          std::string cond = condition();
          std::string a = atom();
          std::string b = atom();
          return pad + target + " = " + cond + " ? " + a + " : " + b + ";\n";
        }
        std::string value = arith();
        return pad + target + " = " + value + ";\n";
      }
      case 4:
      case 5: {  // if / if-else
        std::string cond = condition();
        std::size_t mark = scope_.size();
        std::string then_body = gen_statements(depth + 1, ind + 1);
        scope_.resize(mark);
        std::string out =
            pad + "if (" + cond + ") {\n" + then_body + pad + "}";
        if (pick(3) == 0) {
          std::string else_body = gen_statements(depth + 1, ind + 1);
          scope_.resize(mark);
          out += " else {\n" + else_body + pad + "}";
        }
        return out + "\n";
      }
      case 6: {  // while
        std::string cond = condition();
        std::size_t mark = scope_.size();
        ++loop_depth_;
        std::string body = gen_statements(depth + 1, ind + 1);
        --loop_depth_;
        scope_.resize(mark);
        return pad + "while (" + cond + ") {\n" + body + pad + "}\n";
      }
      case 7: {  // counted for
        std::string i_name = "i" + std::to_string(next_loop_++);
        std::string bound = atom();
        std::size_t mark = scope_.size();
        scope_.push_back(i_name);
        ++loop_depth_;
        std::string body = gen_statements(depth + 1, ind + 1);
        --loop_depth_;
        scope_.resize(mark);
        return pad + "for (int " + i_name + " = 0; " + i_name + " < " + bound +
               "; " + i_name + "++) {\n" + body + pad + "}\n";
      }
      case 8: {  // switch over a small residue
        std::string scrutinee = var();
        std::string out = pad + "switch (" + scrutinee + " % 3) {\n";
        int groups = 1 + pick(2);
        std::size_t mark = scope_.size();
        for (int g = 0; g < groups; ++g) {
          out += pad + "    case " + std::to_string(g) + ":\n";
          out += gen_statements(depth + 1, ind + 2);
          if (pick(4) != 0) out += indent(ind + 2) + "break;\n";
          scope_.resize(mark);
        }
        out += pad + "    default:\n";
        out += gen_statements(depth + 1, ind + 2);
        scope_.resize(mark);
        out += pad + "}\n";
        return out;
      }
      case 9: {  // do-while; the condition sees only pre-loop variables
        std::string cond = condition();
        std::size_t mark = scope_.size();
        ++loop_depth_;
        std::string body = gen_statements(depth + 1, ind + 1);
        --loop_depth_;
        scope_.resize(mark);
        return pad + "do {\n" + body + pad + "} while (" + cond + ");\n";
      }
      case 10: {  // guarded early return or throw
        std::string cond = condition();
        std::string out = pad + "if (" + cond + ") {\n";
        int inner = pick(3);
        if (inner == 0) {
          if (returns_int_) {
            std::string value = arith();
            out += indent(ind + 1) + "return " + value + ";\n";
          } else {
            out += indent(ind + 1) + "return;\n";
          }
        } else if (inner == 1) {
          out += indent(ind + 1) +
                 "throw new RuntimeException(\"bad state\");\n";
        } else {
          std::string target = var();
          std::string value = arith();
          out += indent(ind + 1) + target + " = " + value + ";\n";
        }
        out += pad + "}\n";
        return out;
      }
      case 11: {  // try/catch
        std::string exc = "e" + std::to_string(next_exc_++);
        std::size_t mark = scope_.size();
        std::string try_body = gen_statements(depth + 1, ind + 1);
        scope_.resize(mark);
        std::string catch_body = gen_statements(depth + 1, ind + 1);
        scope_.resize(mark);
        return pad + "try {\n" + try_body + pad + "} catch (RuntimeException " +
               exc + ") {\n" + catch_body + pad + "}\n";
      }
      default: {
        std::string target = var();
        std::string value = arith();
        return pad + target + " = " + value + ";\n";
      }
    }
  }
};

}  // namespace

std::string generate_method(std::uint64_t seed, int max_depth, int max_width) {
  return MethodGenerator(seed, max_depth, max_width).generate();
}

}  // namespace ccred
