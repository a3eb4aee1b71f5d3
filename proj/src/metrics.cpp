#include "ccred/metrics.hpp"

#include "ccred/errors.hpp"

namespace ccred {
namespace {

class Annotator {
 public:
  Annotator(const CompilationUnit& unit, const MethodDecl& method,
            std::vector<NodeAnnotation>& ann)
      : unit_(unit), method_(method), ann_(ann) {}

  void run() {
    if (method_.body != kInvalidNode) visit_statement(method_.body, 0, false);
  }

 private:
  const CompilationUnit& unit_;
  const MethodDecl& method_;
  std::vector<NodeAnnotation>& ann_;

  const AstNode& node(NodeId id) const { return unit_.node(id); }

  void mark(NodeId id, int lambda) { ann_[id].lambda = lambda; }

  void visit_statement(NodeId id, int lambda, bool as_else_branch) {
    const AstNode& n = node(id);
    mark(id, lambda);

    switch (n.kind) {
      case NodeKind::Block:
        for (NodeId child : n.children) visit_statement(child, lambda, false);
        break;
      case NodeKind::LocalVarDecl:
        for (NodeId d : n.children) {
          mark(d, lambda);
          for (NodeId init : node(d).children) visit_expr(init, lambda);
        }
        break;
      case NodeKind::ExprStmt:
        visit_expr(n.children[0], lambda);
        break;
      case NodeKind::If: {
        // `else if` adds +1 but no penalty, and continues the chain's level.
        ann_[id].inherent += 1;
        ann_[id].penalized = !as_else_branch;
        visit_expr(n.children[0], lambda);
        visit_statement(n.children[1], lambda + 1, false);
        if (n.children.size() == 3) {
          NodeId else_child = n.children[2];
          if (node(else_child).kind == NodeKind::If) {
            visit_statement(else_child, lambda, true);
          } else {
            // a bare `else` adds one and nests its contents
            ann_[else_child].inherent += 1;
            visit_statement(else_child, lambda + 1, false);
          }
        }
        break;
      }
      case NodeKind::While:
        ann_[id].inherent += 1;
        ann_[id].penalized = true;
        visit_expr(n.children[0], lambda);
        visit_statement(n.children[1], lambda + 1, false);
        break;
      case NodeKind::DoWhile:
        ann_[id].inherent += 1;
        ann_[id].penalized = true;
        visit_statement(n.children[0], lambda + 1, false);
        visit_expr(n.children[1], lambda);
        break;
      case NodeKind::For: {
        ann_[id].inherent += 1;
        ann_[id].penalized = true;
        ForParts parts = for_parts(unit_, id);
        if (parts.init != kInvalidNode) {
          const AstNode& init = node(parts.init);
          mark(parts.init, lambda);
          if (init.kind == NodeKind::LocalVarDecl) {
            for (NodeId d : init.children) {
              mark(d, lambda);
              for (NodeId e : node(d).children) visit_expr(e, lambda);
            }
          } else {
            for (NodeId e : init.children) visit_expr(e, lambda);
          }
        }
        if (parts.cond != kInvalidNode) visit_expr(parts.cond, lambda);
        if (parts.update != kInvalidNode) {
          mark(parts.update, lambda);
          for (NodeId e : node(parts.update).children) visit_expr(e, lambda);
        }
        visit_statement(parts.body, lambda + 1, false);
        break;
      }
      case NodeKind::ForEach:
        ann_[id].inherent += 1;
        ann_[id].penalized = true;
        mark(n.children[0], lambda);
        visit_expr(n.children[1], lambda);
        visit_statement(n.children[2], lambda + 1, false);
        break;
      case NodeKind::Switch:
        ann_[id].inherent += 1;
        ann_[id].penalized = true;
        visit_expr(n.children[0], lambda);
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          NodeId group = n.children[i];
          mark(group, lambda + 1);
          for (NodeId child : node(group).children) {
            if (node(child).kind == NodeKind::CaseLabel) {
              mark(child, lambda);
              for (NodeId e : node(child).children) visit_expr(e, lambda);
            } else {
              visit_statement(child, lambda + 1, false);
            }
          }
        }
        break;
      case NodeKind::Break:
      case NodeKind::Continue:
        if (!n.text.empty()) ann_[id].inherent += 1;  // labeled jump
        break;
      case NodeKind::Return:
      case NodeKind::Throw:
        for (NodeId child : n.children) visit_expr(child, lambda);
        break;
      case NodeKind::Try:
        for (NodeId child : n.children) {
          const AstNode& c = node(child);
          if (c.kind == NodeKind::Catch) {
            ann_[child].inherent += 1;
            ann_[child].penalized = true;
            mark(child, lambda);
            mark(c.children[0], lambda);
            visit_statement(c.children[1], lambda + 1, false);
          } else if (c.kind == NodeKind::Finally) {
            mark(child, lambda);
            visit_statement(c.children[0], lambda, false);
          } else {
            visit_statement(child, lambda, false);  // try block
          }
        }
        break;
      case NodeKind::Labeled:
        visit_statement(n.children[0], lambda, false);
        break;
      case NodeKind::Empty:
        break;
      default:
        // expression used in statement position (defensive; not produced)
        visit_expr(id, lambda);
        break;
    }
  }

  enum class LogicalContext { None, And, Or };

  void visit_expr(NodeId id, int lambda) {
    visit_expr_ctx(id, lambda, LogicalContext::None);
  }

  // Counts one increment per maximal same-operator sequence. Parentheses are
  // transparent; a different operator, a negated group or any non-logical
  // node starts a fresh sequence.
  void visit_expr_ctx(NodeId id, int lambda, LogicalContext ctx) {
    const AstNode& n = node(id);
    mark(id, lambda);
    switch (n.kind) {
      case NodeKind::Paren:
        visit_expr_ctx(n.children[0], lambda, ctx);
        break;
      case NodeKind::Binary: {
        if (n.text == "&&" || n.text == "||") {
          LogicalContext op =
              n.text == "&&" ? LogicalContext::And : LogicalContext::Or;
          if (op != ctx) ann_[id].inherent += 1;
          visit_expr_ctx(n.children[0], lambda, op);
          visit_expr_ctx(n.children[1], lambda, op);
        } else {
          visit_expr_ctx(n.children[0], lambda, LogicalContext::None);
          visit_expr_ctx(n.children[1], lambda, LogicalContext::None);
        }
        break;
      }
      case NodeKind::Ternary:
        ann_[id].inherent += 1;
        ann_[id].penalized = true;
        visit_expr_ctx(n.children[0], lambda, LogicalContext::None);
        visit_expr_ctx(n.children[1], lambda + 1, LogicalContext::None);
        visit_expr_ctx(n.children[2], lambda + 1, LogicalContext::None);
        break;
      case NodeKind::Call:
        if (!(n.aux & kCallHasReceiver) && n.text == method_.name)
          ann_[id].inherent += 1;  // direct recursion
        for (NodeId child : n.children)
          visit_expr_ctx(child, lambda, LogicalContext::None);
        break;
      default:
        for (NodeId child : n.children)
          visit_expr_ctx(child, lambda, LogicalContext::None);
        break;
    }
  }
};

void accumulate(const CompilationUnit& unit,
                const std::vector<NodeAnnotation>& ann, NodeId id, int base,
                SequenceMetrics& out) {
  const NodeAnnotation& a = ann[id];
  out.iota += a.inherent;
  if (a.penalized) {
    out.nu += a.lambda - base;
    if (a.lambda >= 1) out.mu += 1;
  }
  for (NodeId child : unit.node(id).children)
    accumulate(unit, ann, child, base, out);
}

}  // namespace

AnnotatedMethod annotate_method(const CompilationUnit& unit,
                                const MethodDecl& method) {
  AnnotatedMethod annotated;
  annotated.unit = &unit;
  annotated.method = &method;
  annotated.ann.assign(unit.nodes.size(), NodeAnnotation{});
  Annotator(unit, method, annotated.ann).run();

  int total = 0;
  if (method.body != kInvalidNode) {
    SequenceMetrics whole;
    accumulate(unit, annotated.ann, method.body, 0, whole);
    total = whole.iota + whole.nu;

    const auto& stmts = unit.node(method.body).children;
    if (!stmts.empty()) {
      annotated.body_statements_span = Span{unit.node(stmts.front()).span.begin,
                                            unit.node(stmts.back()).span.end};
    }
  }
  annotated.sscc = total;
  return annotated;
}

int method_sscc(const AnnotatedMethod& annotated) { return annotated.sscc; }

SiblingRun find_sibling_run(const AnnotatedMethod& annotated, Span region) {
  const CompilationUnit& unit = *annotated.unit;
  for (const StatementRun& container :
       statement_containers(unit, *annotated.method)) {
    const auto& stmts = container.statements;
    for (std::size_t first = 0; first < stmts.size(); ++first) {
      if (unit.node(stmts[first]).span.begin != region.begin) continue;
      for (std::size_t last = first; last < stmts.size(); ++last) {
        if (unit.node(stmts[last]).span.end != region.end) continue;
        SiblingRun run;
        run.container = container.container;
        run.first = static_cast<int>(first);
        run.last = static_cast<int>(last);
        run.statements.assign(stmts.begin() + first, stmts.begin() + last + 1);
        run.lambda = annotated.ann[stmts[first]].lambda;
        return run;
      }
    }
  }
  throw RegionNotSiblingRun("offsets [" + std::to_string(region.begin) + ", " +
                            std::to_string(region.end) +
                            "] do not delimit a sibling statement run");
}

SequenceMetrics run_metrics(const AnnotatedMethod& annotated,
                            const std::vector<NodeId>& statements,
                            int lambda) {
  SequenceMetrics m;
  m.lambda = lambda;
  for (NodeId stmt : statements)
    accumulate(*annotated.unit, annotated.ann, stmt, lambda, m);
  m.ccr = m.mu * m.lambda + m.iota + m.nu;
  m.nmcc = m.iota + m.nu;
  return m;
}

SequenceMetrics region_metrics(const AnnotatedMethod& annotated, Span region) {
  SiblingRun run = find_sibling_run(annotated, region);
  return run_metrics(annotated, run.statements, run.lambda);
}

}  // namespace ccred
