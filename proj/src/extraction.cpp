#include "ccred/extraction.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "ccred/errors.hpp"

namespace ccred {
namespace {

// ---- local variable resolution ----

struct VarInfo {
  std::string name;
  std::string type;
  int decl_offset = -1;  // parameters count as declared before the body
  bool is_param = false;
};

struct Occurrence {
  int offset = 0;
  bool is_read = false;
  bool is_write = false;
};

struct Resolution {
  std::vector<VarInfo> vars;  // by key
  std::unordered_map<NodeId, int> use_of;   // Identifier node -> var key
  std::unordered_map<NodeId, int> decl_of;  // VarDeclarator node -> var key
  std::vector<std::vector<Occurrence>> occurrences;  // by key, source order
  std::unordered_map<NodeId, NodeId> parent;
};

class Resolver {
 public:
  Resolver(const CompilationUnit& unit, const MethodDecl& method,
           Resolution& res)
      : unit_(unit), res_(res) {
    scopes_.emplace_back();
    for (const Param& p : method.params) {
      int key = add_var(p.name, p.type, -1, true);
      scopes_.back()[p.name] = key;
    }
    if (method.body != kInvalidNode) {
      build_parents(method.body, kInvalidNode);
      visit_statement(method.body);
    }
  }

 private:
  const CompilationUnit& unit_;
  Resolution& res_;
  std::vector<std::map<std::string, int>> scopes_;

  const AstNode& node(NodeId id) const { return unit_.node(id); }

  void build_parents(NodeId id, NodeId parent) {
    res_.parent[id] = parent;
    for (NodeId child : node(id).children) build_parents(child, id);
  }

  int add_var(const std::string& name, const std::string& type,
              int decl_offset, bool is_param) {
    res_.vars.push_back(VarInfo{name, type, decl_offset, is_param});
    res_.occurrences.emplace_back();
    return static_cast<int>(res_.vars.size() - 1);
  }

  int lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return found->second;
    }
    return -1;
  }

  void record(int key, int offset, bool read, bool write) {
    res_.occurrences[key].push_back(Occurrence{offset, read, write});
  }

  void declare(NodeId declarator) {
    const AstNode& d = node(declarator);
    int key = add_var(d.text, d.text2, d.span.begin, false);
    res_.decl_of[declarator] = key;
    scopes_.back()[d.text] = key;
    record(key, d.span.begin, false, true);
  }

  // Identifiers bound to a local or parameter are recorded with their
  // read/write role; anything unresolved is a field and is ignored.
  void visit_expr(NodeId id) {
    const AstNode& n = node(id);
    switch (n.kind) {
      case NodeKind::Identifier: {
        int key = lookup(n.text);
        if (key >= 0) {
          res_.use_of[id] = key;
          record(key, n.span.begin, true, false);
        }
        break;
      }
      case NodeKind::Assign: {
        NodeId target = n.children[0];
        if (node(target).kind == NodeKind::Identifier) {
          int key = lookup(node(target).text);
          if (key >= 0) {
            res_.use_of[target] = key;
            bool compound = n.text != "=";
            visit_expr(n.children[1]);
            record(key, node(target).span.begin, compound, true);
            break;
          }
        }
        visit_expr(target);
        visit_expr(n.children[1]);
        break;
      }
      case NodeKind::Unary:
      case NodeKind::Postfix: {
        NodeId operand = n.children[0];
        bool incdec = n.text == "++" || n.text == "--";
        if (incdec && node(operand).kind == NodeKind::Identifier) {
          int key = lookup(node(operand).text);
          if (key >= 0) {
            res_.use_of[operand] = key;
            record(key, node(operand).span.begin, true, true);
            break;
          }
        }
        visit_expr(operand);
        break;
      }
      default:
        for (NodeId child : n.children) visit_expr(child);
        break;
    }
  }

  void visit_statement(NodeId id) {
    const AstNode& n = node(id);
    switch (n.kind) {
      case NodeKind::Block: {
        scopes_.emplace_back();
        for (NodeId child : n.children) visit_statement(child);
        scopes_.pop_back();
        break;
      }
      case NodeKind::LocalVarDecl:
        for (NodeId d : n.children) {
          for (NodeId init : node(d).children) visit_expr(init);
          declare(d);
        }
        break;
      case NodeKind::ExprStmt:
      case NodeKind::Return:
      case NodeKind::Throw:
        for (NodeId child : n.children) visit_expr(child);
        break;
      case NodeKind::If:
        visit_expr(n.children[0]);
        visit_statement(n.children[1]);
        if (n.children.size() == 3) visit_statement(n.children[2]);
        break;
      case NodeKind::While:
        visit_expr(n.children[0]);
        visit_statement(n.children[1]);
        break;
      case NodeKind::DoWhile:
        visit_statement(n.children[0]);
        visit_expr(n.children[1]);
        break;
      case NodeKind::For: {
        scopes_.emplace_back();
        ForParts parts = for_parts(unit_, id);
        if (parts.init != kInvalidNode) {
          const AstNode& init = node(parts.init);
          if (init.kind == NodeKind::LocalVarDecl) {
            for (NodeId d : init.children) {
              for (NodeId e : node(d).children) visit_expr(e);
              declare(d);
            }
          } else {
            for (NodeId e : init.children) visit_expr(e);
          }
        }
        if (parts.cond != kInvalidNode) visit_expr(parts.cond);
        if (parts.update != kInvalidNode)
          for (NodeId e : node(parts.update).children) visit_expr(e);
        visit_statement(parts.body);
        scopes_.pop_back();
        break;
      }
      case NodeKind::ForEach: {
        scopes_.emplace_back();
        visit_expr(n.children[1]);
        declare(n.children[0]);
        visit_statement(n.children[2]);
        scopes_.pop_back();
        break;
      }
      case NodeKind::Switch: {
        visit_expr(n.children[0]);
        scopes_.emplace_back();
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          for (NodeId child : node(n.children[i]).children) {
            if (node(child).kind == NodeKind::CaseLabel) {
              for (NodeId e : node(child).children) visit_expr(e);
            } else {
              visit_statement(child);
            }
          }
        }
        scopes_.pop_back();
        break;
      }
      case NodeKind::Try:
        for (NodeId child : n.children) {
          const AstNode& c = node(child);
          if (c.kind == NodeKind::Catch) {
            scopes_.emplace_back();
            declare(c.children[0]);
            visit_statement(c.children[1]);
            scopes_.pop_back();
          } else if (c.kind == NodeKind::Finally) {
            visit_statement(c.children[0]);
          } else {
            visit_statement(child);
          }
        }
        break;
      case NodeKind::Labeled:
        visit_statement(n.children[0]);
        break;
      default:
        break;
    }
  }
};

Resolution resolve_method(const AnnotatedMethod& annotated) {
  Resolution res;
  Resolver(*annotated.unit, *annotated.method, res);
  return res;
}

// ---- structural definite-assignment effects ----

enum WriteState { kNoWrite = 0, kCondWrite = 1, kDefWrite = 2 };

struct VarEffect {
  bool upward_read = false;
  int written = kNoWrite;
  int first_occ = INT_MAX;
};

using Effects = std::map<int, VarEffect>;

Effects seq(Effects a, const Effects& b) {
  for (const auto& [key, eb] : b) {
    VarEffect& ea = a[key];
    if (eb.upward_read && ea.written != kDefWrite) ea.upward_read = true;
    if (eb.written > ea.written) ea.written = eb.written;
    ea.first_occ = std::min(ea.first_occ, eb.first_occ);
  }
  return a;
}

Effects weaken(Effects a) {
  for (auto& [key, e] : a)
    if (e.written == kDefWrite) e.written = kCondWrite;
  return a;
}

Effects branch(const Effects& a, const Effects& b) {
  Effects out = a;
  for (auto& [key, e] : out) {
    auto it = b.find(key);
    bool both_def = e.written == kDefWrite && it != b.end() &&
                    it->second.written == kDefWrite;
    if (e.written != kNoWrite && !both_def) e.written = kCondWrite;
  }
  for (const auto& [key, eb] : b) {
    VarEffect& e = out[key];
    e.upward_read = e.upward_read || eb.upward_read;
    e.first_occ = std::min(e.first_occ, eb.first_occ);
    if (eb.written != kNoWrite && e.written == kNoWrite)
      e.written = kCondWrite;
    else if (eb.written == kCondWrite && e.written == kDefWrite)
      e.written = kCondWrite;
  }
  return out;
}

class EffectWalker {
 public:
  EffectWalker(const CompilationUnit& unit, const Resolution& res)
      : unit_(unit), res_(res) {}

  Effects statements(const std::vector<NodeId>& stmts) const {
    Effects out;
    for (NodeId s : stmts) out = seq(std::move(out), statement(s));
    return out;
  }

  Effects statement(NodeId id) const {
    const AstNode& n = unit_.node(id);
    switch (n.kind) {
      case NodeKind::Block:
        return statements(n.children);
      case NodeKind::LocalVarDecl: {
        Effects out;
        for (NodeId d : n.children) {
          for (NodeId init : unit_.node(d).children)
            out = seq(std::move(out), expr(init));
          auto it = res_.decl_of.find(d);
          if (it != res_.decl_of.end())
            out = seq(std::move(out),
                      write_effect(it->second, unit_.node(d).span.begin));
        }
        return out;
      }
      case NodeKind::ExprStmt:
      case NodeKind::Return:
      case NodeKind::Throw: {
        Effects out;
        for (NodeId child : n.children) out = seq(std::move(out), expr(child));
        return out;
      }
      case NodeKind::If: {
        Effects out = expr(n.children[0]);
        Effects then_eff = statement(n.children[1]);
        Effects else_eff =
            n.children.size() == 3 ? statement(n.children[2]) : Effects{};
        return seq(std::move(out), branch(then_eff, else_eff));
      }
      case NodeKind::While:
        return seq(expr(n.children[0]), weaken(statement(n.children[1])));
      case NodeKind::DoWhile:
        return seq(statement(n.children[0]), expr(n.children[1]));
      case NodeKind::For: {
        ForParts parts = for_parts(unit_, id);
        Effects out;
        if (parts.init != kInvalidNode) {
          const AstNode& init = unit_.node(parts.init);
          if (init.kind == NodeKind::LocalVarDecl) {
            out = seq(std::move(out), statement(parts.init));
          } else {
            for (NodeId e : init.children) out = seq(std::move(out), expr(e));
          }
        }
        if (parts.cond != kInvalidNode)
          out = seq(std::move(out), expr(parts.cond));
        Effects body = statement(parts.body);
        if (parts.update != kInvalidNode)
          for (NodeId e : unit_.node(parts.update).children)
            body = seq(std::move(body), expr(e));
        return seq(std::move(out), weaken(std::move(body)));
      }
      case NodeKind::ForEach: {
        Effects out = expr(n.children[1]);
        Effects body;
        auto it = res_.decl_of.find(n.children[0]);
        if (it != res_.decl_of.end())
          body = write_effect(it->second, unit_.node(n.children[0]).span.begin);
        body = seq(std::move(body), statement(n.children[2]));
        return seq(std::move(out), weaken(std::move(body)));
      }
      case NodeKind::Switch: {
        Effects out = expr(n.children[0]);
        Effects merged;  // empty alternative: no group may run at all
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          Effects group;
          for (NodeId child : unit_.node(n.children[i]).children) {
            if (unit_.node(child).kind == NodeKind::CaseLabel) {
              for (NodeId e : unit_.node(child).children)
                group = seq(std::move(group), expr(e));
            } else {
              group = seq(std::move(group), statement(child));
            }
          }
          merged = branch(merged, group);
        }
        return seq(std::move(out), std::move(merged));
      }
      case NodeKind::Try: {
        Effects out;
        for (NodeId child : n.children) {
          const AstNode& c = unit_.node(child);
          if (c.kind == NodeKind::Catch) {
            Effects ceff;
            auto it = res_.decl_of.find(c.children[0]);
            if (it != res_.decl_of.end())
              ceff = write_effect(it->second,
                                  unit_.node(c.children[0]).span.begin);
            ceff = seq(std::move(ceff), statement(c.children[1]));
            out = seq(std::move(out), weaken(std::move(ceff)));
          } else if (c.kind == NodeKind::Finally) {
            out = seq(std::move(out), statement(c.children[0]));
          } else {
            out = seq(std::move(out), weaken(statement(child)));
          }
        }
        return out;
      }
      case NodeKind::Labeled:
        return statement(n.children[0]);
      default:
        return {};
    }
  }

  Effects expr(NodeId id) const {
    const AstNode& n = unit_.node(id);
    switch (n.kind) {
      case NodeKind::Identifier: {
        auto it = res_.use_of.find(id);
        if (it == res_.use_of.end()) return {};
        return read_effect(it->second, n.span.begin);
      }
      case NodeKind::Assign: {
        NodeId target = n.children[0];
        auto it = res_.use_of.find(target);
        if (unit_.node(target).kind == NodeKind::Identifier &&
            it != res_.use_of.end()) {
          Effects out;
          if (n.text != "=")
            out = read_effect(it->second, unit_.node(target).span.begin);
          out = seq(std::move(out), expr(n.children[1]));
          return seq(std::move(out),
                     write_effect(it->second, unit_.node(target).span.begin));
        }
        return seq(expr(target), expr(n.children[1]));
      }
      case NodeKind::Unary:
      case NodeKind::Postfix: {
        NodeId operand = n.children[0];
        auto it = res_.use_of.find(operand);
        if ((n.text == "++" || n.text == "--") &&
            unit_.node(operand).kind == NodeKind::Identifier &&
            it != res_.use_of.end()) {
          Effects out = read_effect(it->second, unit_.node(operand).span.begin);
          return seq(std::move(out),
                     write_effect(it->second, unit_.node(operand).span.begin));
        }
        return expr(operand);
      }
      case NodeKind::Ternary:
        return seq(expr(n.children[0]),
                   branch(expr(n.children[1]), expr(n.children[2])));
      case NodeKind::Binary:
        if (n.text == "&&" || n.text == "||")  // short circuit
          return seq(expr(n.children[0]), weaken(expr(n.children[1])));
        [[fallthrough]];
      default: {
        Effects out;
        for (NodeId child : n.children) out = seq(std::move(out), expr(child));
        return out;
      }
    }
  }

 private:
  static Effects read_effect(int key, int offset) {
    Effects out;
    out[key] = VarEffect{true, kNoWrite, offset};
    return out;
  }
  static Effects write_effect(int key, int offset) {
    Effects out;
    out[key] = VarEffect{false, kDefWrite, offset};
    return out;
  }

  const CompilationUnit& unit_;
  const Resolution& res_;
};

// ---- structural queries over a region ----

bool subtree_contains_return(const CompilationUnit& unit, NodeId id) {
  const AstNode& n = unit.node(id);
  if (n.kind == NodeKind::Return) return true;
  for (NodeId child : n.children)
    if (subtree_contains_return(unit, child)) return true;
  return false;
}

bool returns_always(const CompilationUnit& unit, NodeId id);

bool list_returns_always(const CompilationUnit& unit,
                         const std::vector<NodeId>& stmts) {
  for (NodeId s : stmts)
    if (returns_always(unit, s)) return true;
  return false;
}

bool returns_always(const CompilationUnit& unit, NodeId id) {
  const AstNode& n = unit.node(id);
  switch (n.kind) {
    case NodeKind::Return:
    case NodeKind::Throw:
      return true;
    case NodeKind::Block:
      return list_returns_always(unit, n.children);
    case NodeKind::If:
      return n.children.size() == 3 && returns_always(unit, n.children[1]) &&
             returns_always(unit, n.children[2]);
    case NodeKind::Labeled:
      return returns_always(unit, n.children[0]);
    default:
      return false;  // loops, switch and try give no structural guarantee
  }
}

void collect_jumps(const CompilationUnit& unit, NodeId id,
                   std::vector<NodeId>& out) {
  const AstNode& n = unit.node(id);
  if (n.kind == NodeKind::Break || n.kind == NodeKind::Continue)
    out.push_back(id);
  for (NodeId child : n.children) collect_jumps(unit, child, out);
}

bool is_loop_kind(NodeKind kind) {
  return kind == NodeKind::While || kind == NodeKind::DoWhile ||
         kind == NodeKind::For || kind == NodeKind::ForEach;
}

NodeId jump_target(const CompilationUnit& unit, const Resolution& res,
                   NodeId jump) {
  const AstNode& j = unit.node(jump);
  NodeId cur = jump;
  while (true) {
    auto it = res.parent.find(cur);
    if (it == res.parent.end() || it->second == kInvalidNode)
      return kInvalidNode;
    cur = it->second;
    const AstNode& n = unit.node(cur);
    if (!j.text.empty()) {
      if (n.kind == NodeKind::Labeled && n.text == j.text) return cur;
    } else if (is_loop_kind(n.kind)) {
      return cur;
    } else if (n.kind == NodeKind::Switch && j.kind == NodeKind::Break) {
      return cur;
    }
  }
}

bool region_is_void_tail(const AnnotatedMethod& annotated,
                         const Region& region) {
  const CompilationUnit& unit = *annotated.unit;
  const MethodDecl& method = *annotated.method;
  if (method.return_type != "void") return false;
  if (region.container != method.body) return false;
  const auto& body_stmts = unit.node(method.body).children;
  return !body_stmts.empty() && region.statements.back() == body_stmts.back();
}

int count_loc(const CompilationUnit& unit, Span span) {
  std::set<int> lines;
  for (const Span& tok : unit.token_spans) {
    if (tok.begin >= span.begin && tok.begin <= span.end)
      lines.insert(unit.source.line_of(tok.begin));
  }
  return static_cast<int>(lines.size());
}

}  // namespace

std::vector<Region> enumerate_candidates(const AnnotatedMethod& annotated) {
  const CompilationUnit& unit = *annotated.unit;
  std::vector<Region> out;

  for (const StatementRun& container :
       statement_containers(unit, *annotated.method)) {
    const auto& stmts = container.statements;
    if (stmts.empty()) continue;
    std::vector<bool> contributes(stmts.size());
    for (std::size_t i = 0; i < stmts.size(); ++i) {
      SequenceMetrics m = run_metrics(annotated, {stmts[i]}, 0);
      contributes[i] = m.iota > 0;
    }
    for (std::size_t first = 0; first < stmts.size(); ++first) {
      bool any = false;
      for (std::size_t last = first; last < stmts.size(); ++last) {
        any = any || contributes[last];
        if (!any) continue;
        Region region;
        region.container = container.container;
        region.statements.assign(stmts.begin() + first,
                                 stmts.begin() + last + 1);
        region.span = Span{unit.node(stmts[first]).span.begin,
                           unit.node(stmts[last]).span.end};
        region.lambda = annotated.ann[stmts[first]].lambda;
        out.push_back(std::move(region));
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const Region& a, const Region& b) {
    if (a.span.begin != b.span.begin) return a.span.begin < b.span.begin;
    return a.span.end < b.span.end;
  });
  return out;
}

namespace {

DataflowFacts dataflow_facts_impl(const AnnotatedMethod& annotated,
                                  const Region& region,
                                  const Resolution& res) {
  const CompilationUnit& unit = *annotated.unit;
  EffectWalker walker(unit, res);
  Effects effects = walker.statements(region.statements);

  DataflowFacts facts;

  struct Candidate {
    int key;
    int first_occ;
  };
  std::vector<Candidate> input_keys;
  for (const auto& [key, eff] : effects) {
    const VarInfo& var = res.vars[key];
    bool declared_before = var.is_param || var.decl_offset < region.span.begin;
    if (!declared_before) continue;
    if (eff.upward_read || eff.written == kCondWrite)
      input_keys.push_back({key, eff.first_occ});
  }
  std::sort(input_keys.begin(), input_keys.end(),
            [](const Candidate& a, const Candidate& b) {
              return a.first_occ < b.first_occ;
            });
  for (const Candidate& c : input_keys) {
    const VarInfo& var = res.vars[c.key];
    facts.inputs.push_back(DataflowFacts::Var{var.name, var.type, false});
  }

  for (const auto& [key, eff] : effects) {
    if (eff.written == kNoWrite) continue;
    const VarInfo& var = res.vars[key];
    bool declared_inside = !var.is_param &&
                           var.decl_offset >= region.span.begin &&
                           var.decl_offset <= region.span.end;
    // Reads past the region's end observe the region's final value.
    bool read_after = false;
    for (const Occurrence& occ : res.occurrences[key]) {
      if (occ.offset > region.span.end && occ.is_read) {
        read_after = true;
        break;
      }
    }
    if (!read_after) continue;
    if (declared_inside) {
      // Only declarations at run level stay visible after the region.
      bool at_run_level = false;
      for (NodeId stmt : region.statements) {
        if (unit.node(stmt).kind == NodeKind::LocalVarDecl) {
          for (NodeId d : unit.node(stmt).children) {
            auto it = res.decl_of.find(d);
            if (it != res.decl_of.end() && it->second == key)
              at_run_level = true;
          }
        }
      }
      if (!at_run_level) continue;
    }
    facts.outputs.push_back(
        DataflowFacts::Var{var.name, var.type, declared_inside});
  }

  for (NodeId stmt : region.statements) {
    if (subtree_contains_return(unit, stmt)) facts.contains_return = true;
  }
  facts.all_paths_return = list_returns_always(unit, region.statements);

  std::vector<NodeId> jumps;
  for (NodeId stmt : region.statements) collect_jumps(unit, stmt, jumps);
  for (NodeId jump : jumps) {
    NodeId target = jump_target(unit, res, jump);
    if (target == kInvalidNode ||
        !region.span.contains(unit.node(target).span))
      facts.jump_escapes.push_back(jump);
  }

  return facts;
}

Feasibility check_feasibility_impl(const AnnotatedMethod& annotated,
                                   const Region& region,
                                   const DataflowFacts& facts) {
  if (!facts.jump_escapes.empty()) return {false, kReasonJumpTarget};
  if (facts.outputs.size() > 1) return {false, kReasonMultiOutput};
  if (facts.contains_return) {
    bool ok = facts.all_paths_return || region_is_void_tail(annotated, region);
    if (!ok) return {false, kReasonReturnFlow};
    // A value-returning path and an output variable cannot both be wired
    // through the call site.
    if (!facts.outputs.empty()) return {false, kReasonReturnFlow};
  }
  return {true, kReasonOk};
}

}  // namespace

DataflowFacts dataflow_facts(const AnnotatedMethod& annotated,
                             const Region& region) {
  Resolution res = resolve_method(annotated);
  return dataflow_facts_impl(annotated, region, res);
}

Feasibility check_feasibility(const AnnotatedMethod& annotated,
                              const Region& region) {
  Resolution res = resolve_method(annotated);
  return check_feasibility_impl(annotated, region,
                                dataflow_facts_impl(annotated, region, res));
}

std::string method_address(const MethodDecl& method) {
  std::string id = method.owner_class + "#" + method.name;
  if (method.ordinal > 1) id += "@" + std::to_string(method.ordinal);
  return id;
}

RefactoringCache build_cache(const AnnotatedMethod& annotated) {
  RefactoringCache cache;
  cache.method_id = method_address(*annotated.method);
  cache.body_span = annotated.body_statements_span;
  Resolution res = resolve_method(annotated);

  for (const Region& region : enumerate_candidates(annotated)) {
    SequenceMetrics m =
        run_metrics(annotated, region.statements, region.lambda);
    DataflowFacts facts = dataflow_facts_impl(annotated, region, res);
    Feasibility feas = check_feasibility_impl(annotated, region, facts);

    CacheEntry entry;
    entry.start = region.span.begin;
    entry.end = region.span.end;
    entry.feasible = feas.feasible;
    entry.reason = feas.reason;
    if (feas.feasible) {
      entry.num_params = static_cast<int>(facts.inputs.size());
      entry.loc = count_loc(*annotated.unit, region.span);
    }
    entry.ccr = m.ccr;
    entry.nmcc = m.nmcc;
    entry.iota = m.iota;
    entry.nu = m.nu;
    entry.mu = m.mu;
    entry.lambda = m.lambda;
    cache.entries.push_back(std::move(entry));
  }
  return cache;
}

std::string write_cache_csv(const RefactoringCache& cache) {
  std::ostringstream out;
  for (const CacheEntry& e : cache.entries) {
    out << e.start << ", " << e.end << ", " << (e.feasible ? 1 : 0) << ", \""
        << e.reason << "\", " << e.num_params << ", " << e.loc << ", " << e.ccr
        << ", " << e.nmcc << ", " << e.iota << ", " << e.nu << ", " << e.mu
        << ", " << e.lambda << "\n";
  }
  return out.str();
}

RefactoringCache read_cache_csv(const std::string& text) {
  RefactoringCache cache;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    // split on commas, honoring the quoted reason field
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    for (char c : line) {
      if (c == '"') {
        in_quotes = !in_quotes;
        continue;
      }
      if (c == ',' && !in_quotes) {
        fields.push_back(field);
        field.clear();
        continue;
      }
      field += c;
    }
    fields.push_back(field);
    if (in_quotes) throw CsvFormatError(line_no, "unterminated quote");
    if (fields.size() != 12)
      throw CsvFormatError(line_no, "expected 12 fields, got " +
                                        std::to_string(fields.size()));

    auto trim = [](std::string s) {
      std::size_t a = s.find_first_not_of(" \t\r");
      std::size_t b = s.find_last_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      return s.substr(a, b - a + 1);
    };
    auto to_int = [&](const std::string& s) {
      std::string t = trim(s);
      try {
        std::size_t used = 0;
        int value = std::stoi(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return value;
      } catch (const std::exception&) {
        throw CsvFormatError(line_no, "not an integer: '" + t + "'");
      }
    };

    CacheEntry e;
    e.start = to_int(fields[0]);
    e.end = to_int(fields[1]);
    int feas = to_int(fields[2]);
    if (feas != 0 && feas != 1)
      throw CsvFormatError(line_no, "feasibility must be 0 or 1");
    e.feasible = feas == 1;
    e.reason = trim(fields[3]);
    e.num_params = to_int(fields[4]);
    e.loc = to_int(fields[5]);
    e.ccr = to_int(fields[6]);
    e.nmcc = to_int(fields[7]);
    e.iota = to_int(fields[8]);
    e.nu = to_int(fields[9]);
    e.mu = to_int(fields[10]);
    e.lambda = to_int(fields[11]);
    cache.entries.push_back(std::move(e));
  }

  // The run covering the whole body, if cached, contains every other entry.
  for (const CacheEntry& e : cache.entries) {
    bool covers_all = true;
    for (const CacheEntry& other : cache.entries)
      covers_all = covers_all && e.span().contains(other.span());
    if (covers_all) {
      cache.body_span = e.span();
      break;
    }
  }
  return cache;
}

}  // namespace ccred
