#pragma once

#include <string>

#include "ccred/ast.hpp"
#include "ccred/source.hpp"

namespace ccred {

// Parses a source file into a compilation unit. Grammatical errors raise
// SyntaxError; an unsupported construct (lambda, anonymous class) inside a
// method marks that method unanalyzable and parsing continues.
CompilationUnit parse(SourceFile source);

// Fragment entry points, used to check that any node's text slice re-parses
// to a structurally identical subtree.
struct ParsedFragment {
  CompilationUnit unit;
  NodeId root = kInvalidNode;
};

ParsedFragment parse_statement_fragment(const std::string& text);
ParsedFragment parse_expression_fragment(const std::string& text);

}  // namespace ccred
