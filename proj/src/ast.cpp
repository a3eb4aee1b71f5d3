#include "ccred/ast.hpp"

#include <sstream>

namespace ccred {

const char* node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Block: return "Block";
    case NodeKind::LocalVarDecl: return "LocalVarDecl";
    case NodeKind::VarDeclarator: return "VarDeclarator";
    case NodeKind::ExprStmt: return "ExprStmt";
    case NodeKind::If: return "If";
    case NodeKind::While: return "While";
    case NodeKind::DoWhile: return "DoWhile";
    case NodeKind::For: return "For";
    case NodeKind::ForEach: return "ForEach";
    case NodeKind::Switch: return "Switch";
    case NodeKind::CaseGroup: return "CaseGroup";
    case NodeKind::CaseLabel: return "CaseLabel";
    case NodeKind::Break: return "Break";
    case NodeKind::Continue: return "Continue";
    case NodeKind::Return: return "Return";
    case NodeKind::Throw: return "Throw";
    case NodeKind::Try: return "Try";
    case NodeKind::Catch: return "Catch";
    case NodeKind::Finally: return "Finally";
    case NodeKind::Labeled: return "Labeled";
    case NodeKind::Empty: return "Empty";
    case NodeKind::Assign: return "Assign";
    case NodeKind::Ternary: return "Ternary";
    case NodeKind::Binary: return "Binary";
    case NodeKind::Unary: return "Unary";
    case NodeKind::Postfix: return "Postfix";
    case NodeKind::InstanceOf: return "InstanceOf";
    case NodeKind::Call: return "Call";
    case NodeKind::FieldAccess: return "FieldAccess";
    case NodeKind::ArrayAccess: return "ArrayAccess";
    case NodeKind::NewArray: return "NewArray";
    case NodeKind::NewObject: return "NewObject";
    case NodeKind::Identifier: return "Identifier";
    case NodeKind::Literal: return "Literal";
    case NodeKind::Paren: return "Paren";
    case NodeKind::ExprList: return "ExprList";
  }
  return "?";
}

bool is_statement_kind(NodeKind kind) {
  switch (kind) {
    case NodeKind::Block:
    case NodeKind::LocalVarDecl:
    case NodeKind::ExprStmt:
    case NodeKind::If:
    case NodeKind::While:
    case NodeKind::DoWhile:
    case NodeKind::For:
    case NodeKind::ForEach:
    case NodeKind::Switch:
    case NodeKind::Break:
    case NodeKind::Continue:
    case NodeKind::Return:
    case NodeKind::Throw:
    case NodeKind::Try:
    case NodeKind::Labeled:
    case NodeKind::Empty:
      return true;
    default:
      return false;
  }
}

ForParts for_parts(const CompilationUnit& unit, NodeId for_node) {
  const AstNode& n = unit.node(for_node);
  ForParts parts;
  std::size_t idx = 0;
  if (n.aux & (kForInitDecl | kForInitExprs)) parts.init = n.children[idx++];
  if (n.aux & kForHasCond) parts.cond = n.children[idx++];
  if (n.aux & kForHasUpdate) parts.update = n.children[idx++];
  parts.body = n.children[idx];
  return parts;
}

std::vector<const MethodDecl*> list_methods(const CompilationUnit& unit) {
  std::vector<const MethodDecl*> out;
  for (const ClassDecl& cls : unit.classes) {
    for (const MethodDecl& m : cls.methods) out.push_back(&m);
  }
  return out;
}

const MethodDecl* find_method(const CompilationUnit& unit,
                              const std::string& address) {
  std::string cls = address;
  std::string name;
  int ordinal = 1;
  if (auto hash = address.find('#'); hash != std::string::npos) {
    cls = address.substr(0, hash);
    name = address.substr(hash + 1);
    if (auto at = name.find('@'); at != std::string::npos) {
      ordinal = std::stoi(name.substr(at + 1));
      name = name.substr(0, at);
    }
  }
  for (const ClassDecl& c : unit.classes) {
    if (c.name != cls) continue;
    for (const MethodDecl& m : c.methods) {
      if (m.name == name && m.ordinal == ordinal) return &m;
    }
  }
  return nullptr;
}

namespace {

void collect_containers(const CompilationUnit& unit, NodeId id,
                        std::vector<StatementRun>& out) {
  const AstNode& n = unit.node(id);
  if (n.kind == NodeKind::Block) {
    StatementRun run;
    run.container = id;
    run.statements = n.children;
    out.push_back(std::move(run));
  } else if (n.kind == NodeKind::CaseGroup) {
    StatementRun run;
    run.container = id;
    for (NodeId child : n.children) {
      if (unit.node(child).kind != NodeKind::CaseLabel)
        run.statements.push_back(child);
    }
    out.push_back(std::move(run));
  }
  for (NodeId child : n.children) collect_containers(unit, child, out);
}

}  // namespace

std::vector<StatementRun> statement_containers(const CompilationUnit& unit,
                                               const MethodDecl& method) {
  std::vector<StatementRun> out;
  if (method.body != kInvalidNode) collect_containers(unit, method.body, out);
  return out;
}

namespace {

void dump_rec(const CompilationUnit& unit, NodeId id, int base, int depth,
              std::ostringstream& out) {
  const AstNode& n = unit.node(id);
  for (int i = 0; i < depth; ++i) out << "  ";
  out << node_kind_name(n.kind) << "[" << (n.span.begin - base) << ","
      << (n.span.end - base) << "]";
  if (!n.text.empty()) out << " '" << n.text << "'";
  if (!n.text2.empty()) out << " :" << n.text2;
  if (n.aux != 0) out << " aux=" << static_cast<int>(n.aux);
  out << "\n";
  for (NodeId child : n.children) dump_rec(unit, child, base, depth + 1, out);
}

}  // namespace

std::string dump_tree(const CompilationUnit& unit, NodeId root, int base) {
  std::ostringstream out;
  dump_rec(unit, root, base, 0, out);
  return out.str();
}

}  // namespace ccred
