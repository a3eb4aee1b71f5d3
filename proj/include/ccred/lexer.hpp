#pragma once

#include <string_view>
#include <vector>

#include "ccred/source.hpp"

namespace ccred {

enum class TokenKind {
  Identifier,
  Keyword,
  IntLiteral,
  FloatLiteral,
  StringLiteral,
  CharLiteral,
  Symbol,
  EndOfFile,
};

struct Token {
  TokenKind kind = TokenKind::EndOfFile;
  std::string_view text;  // view into the source text
  Span span;

  bool is(TokenKind k) const { return kind == k; }
  bool is_keyword(std::string_view kw) const {
    return kind == TokenKind::Keyword && text == kw;
  }
  bool is_symbol(std::string_view sym) const {
    return kind == TokenKind::Symbol && text == sym;
  }
};

bool is_java_keyword(std::string_view word);

// Splits the text into tokens, dropping comments and whitespace.
// Throws SyntaxError on unterminated literals/comments or stray characters.
std::vector<Token> tokenize(const SourceFile& source);

}  // namespace ccred
