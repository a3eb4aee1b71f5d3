#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccred/source.hpp"

namespace ccred {

using NodeId = std::int32_t;
inline constexpr NodeId kInvalidNode = -1;

enum class NodeKind : std::uint8_t {
  // statements
  Block,
  LocalVarDecl,   // text = declared type; children = VarDeclarator...
  VarDeclarator,  // text = name, text2 = declared type; children = [init?]
  ExprStmt,
  If,         // children = [cond, then] or [cond, then, else]
  While,      // children = [cond, body]
  DoWhile,    // children = [body, cond]
  For,        // children per aux bits; see ForParts
  ForEach,    // text = element type; children = [VarDeclarator, iterable, body]
  Switch,     // children = [scrutinee, CaseGroup...]
  CaseGroup,  // children = CaseLabel... then statements
  CaseLabel,  // children = [expr] for case, [] for default
  Break,      // text = label or empty
  Continue,   // text = label or empty
  Return,     // children = [expr?]
  Throw,      // children = [expr]
  Try,        // children = [Block, Catch..., Finally?]
  Catch,      // children = [VarDeclarator, Block]
  Finally,    // children = [Block]
  Labeled,    // text = label; children = [stmt]
  Empty,
  // expressions
  Assign,       // text = operator (=, +=, ...); children = [target, value]
  Ternary,      // children = [cond, thenExpr, elseExpr]
  Binary,       // text = operator; children = [lhs, rhs]
  Unary,        // text = operator (!, -, +, ++, --); children = [operand]
  Postfix,      // text = operator (++, --); children = [operand]
  InstanceOf,   // text = type; children = [expr]
  Call,         // text = callee name; children = [receiver?, args...]
  FieldAccess,  // text = field name; children = [receiver]
  ArrayAccess,  // children = [array, index]
  NewArray,     // text = element type; children = dims, then ExprList if init
  NewObject,    // text = type; children = args
  Identifier,   // text = name
  Literal,      // text = literal text
  Paren,        // children = [inner]
  ExprList,     // grouping for for-init/update and array initializers
};

const char* node_kind_name(NodeKind kind);
bool is_statement_kind(NodeKind kind);

// aux bit flags
inline constexpr std::uint8_t kForInitDecl = 1;   // For
inline constexpr std::uint8_t kForInitExprs = 2;  // For
inline constexpr std::uint8_t kForHasCond = 4;    // For
inline constexpr std::uint8_t kForHasUpdate = 8;  // For
inline constexpr std::uint8_t kCallHasReceiver = 1;  // Call
inline constexpr std::uint8_t kNewArrayHasInit = 1;  // NewArray

struct AstNode {
  NodeKind kind = NodeKind::Empty;
  Span span;
  std::string text;
  std::string text2;
  std::uint8_t aux = 0;
  std::vector<NodeId> children;
};

struct ForParts {
  NodeId init = kInvalidNode;  // LocalVarDecl or ExprList
  NodeId cond = kInvalidNode;
  NodeId update = kInvalidNode;  // ExprList
  NodeId body = kInvalidNode;
};

struct Param {
  std::string type;
  std::string name;
};

struct MethodDecl {
  std::string owner_class;
  std::string name;
  std::vector<Param> params;
  std::string return_type;  // "void" for constructors
  bool is_static = false;
  bool is_constructor = false;
  Span span;
  NodeId body = kInvalidNode;  // Block; kInvalidNode when not analyzable
  bool analyzable = true;
  std::string problem;  // why the method is excluded from analysis
  Span problem_span;
  int ordinal = 1;  // 1-based among same-named methods of the class
};

struct ClassDecl {
  std::string name;
  Span span;
  std::vector<MethodDecl> methods;
};

struct CompilationUnit {
  SourceFile source;
  std::vector<AstNode> nodes;
  std::vector<ClassDecl> classes;
  std::vector<Span> token_spans;  // retained for line-of-code accounting

  const AstNode& node(NodeId id) const { return nodes[id]; }
  AstNode& node(NodeId id) { return nodes[id]; }
};

ForParts for_parts(const CompilationUnit& unit, NodeId for_node);

// Methods of all classes in source order; constructors included.
std::vector<const MethodDecl*> list_methods(const CompilationUnit& unit);

// Resolves "Class#name" or "Class#name@k" (k = 1-based overload ordinal).
// Returns nullptr when absent.
const MethodDecl* find_method(const CompilationUnit& unit,
                              const std::string& address);

// A statement container (method body block, nested block, or switch case
// group) together with its statement children in order.
struct StatementRun {
  NodeId container = kInvalidNode;
  std::vector<NodeId> statements;
};

// All statement containers in the method body, pre-order.
std::vector<StatementRun> statement_containers(const CompilationUnit& unit,
                                               const MethodDecl& method);

// Canonical textual form of a subtree; offsets printed relative to `base`
// so that structurally identical trees at different positions compare equal.
std::string dump_tree(const CompilationUnit& unit, NodeId root, int base = 0);

}  // namespace ccred
