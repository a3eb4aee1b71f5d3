#include "ccred/lexer.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

#include "ccred/errors.hpp"

namespace ccred {
namespace {

const std::unordered_set<std::string_view>& keyword_set() {
  static const std::unordered_set<std::string_view> kws = {
      "abstract",   "boolean",  "break",      "byte",    "case",
      "catch",      "char",     "class",      "continue", "default",
      "do",         "double",   "else",       "extends", "final",
      "finally",    "float",    "for",        "if",      "implements",
      "import",     "instanceof", "int",      "interface", "long",
      "native",     "new",      "package",    "private", "protected",
      "public",     "return",   "short",      "static",  "strictfp",
      "super",      "switch",   "synchronized", "this",  "throw",
      "throws",     "transient", "try",       "void",    "volatile",
      "while",      "true",     "false",      "null",    "enum",
  };
  return kws;
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool ident_part(char c) {
  return ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

// Multi-character symbols, longest first.
constexpr std::array<std::string_view, 17> kMultiSymbols = {
    "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=",
    "-=", "*=", "/=", "%=", "&=", "|=", "^=", "->"};

constexpr std::string_view kSingleSymbols = "+-*/%!=<>&|^?:;,.(){}[]@";

}  // namespace

bool is_java_keyword(std::string_view word) {
  return keyword_set().count(word) > 0;
}

std::vector<Token> tokenize(const SourceFile& source) {
  const std::string& text = source.text();
  const int n = source.size();
  std::vector<Token> tokens;
  int i = 0;

  auto error = [&](int at, const std::string& message) -> SyntaxError {
    LineCol lc = source.line_col(at < n ? at : (n > 0 ? n - 1 : 0));
    return SyntaxError(lc.line, lc.column, message);
  };

  auto push = [&](TokenKind kind, int begin, int end_exclusive) {
    tokens.push_back(Token{
        kind,
        std::string_view(text).substr(begin, end_exclusive - begin),
        Span{begin, end_exclusive - 1}});
  };

  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && text[i + 1] == '*') {
      int start = i;
      i += 2;
      while (i + 1 < n && !(text[i] == '*' && text[i + 1] == '/')) ++i;
      if (i + 1 >= n) throw error(start, "unterminated block comment");
      i += 2;
      continue;
    }
    if (ident_start(c)) {
      int begin = i;
      while (i < n && ident_part(text[i])) ++i;
      std::string_view word = std::string_view(text).substr(begin, i - begin);
      push(is_java_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier,
           begin, i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      int begin = i;
      bool is_float = false;
      if (c == '0' && i + 1 < n && (text[i + 1] == 'x' || text[i + 1] == 'X')) {
        i += 2;
        while (i < n && std::isxdigit(static_cast<unsigned char>(text[i]))) ++i;
      } else {
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i < n && text[i] == '.' && i + 1 < n &&
            std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
          is_float = true;
          ++i;
          while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        }
        if (i < n && (text[i] == 'e' || text[i] == 'E')) {
          int save = i;
          ++i;
          if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
          if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            is_float = true;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i])))
              ++i;
          } else {
            i = save;
          }
        }
      }
      if (i < n && (text[i] == 'f' || text[i] == 'F' || text[i] == 'd' ||
                    text[i] == 'D')) {
        is_float = true;
        ++i;
      } else if (i < n && (text[i] == 'l' || text[i] == 'L')) {
        ++i;
      }
      push(is_float ? TokenKind::FloatLiteral : TokenKind::IntLiteral, begin, i);
      continue;
    }
    if (c == '"' || c == '\'') {
      char quote = c;
      int begin = i;
      ++i;
      while (i < n && text[i] != quote) {
        if (text[i] == '\\') ++i;
        if (text[i] == '\n') throw error(begin, "unterminated literal");
        ++i;
      }
      if (i >= n) throw error(begin, "unterminated literal");
      ++i;
      push(quote == '"' ? TokenKind::StringLiteral : TokenKind::CharLiteral,
           begin, i);
      continue;
    }
    bool matched = false;
    for (std::string_view sym : kMultiSymbols) {
      if (std::string_view(text).substr(i, sym.size()) == sym) {
        push(TokenKind::Symbol, i, i + static_cast<int>(sym.size()));
        i += static_cast<int>(sym.size());
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (kSingleSymbols.find(c) != std::string_view::npos) {
      push(TokenKind::Symbol, i, i + 1);
      ++i;
      continue;
    }
    throw error(i, std::string("unexpected character '") + c + "'");
  }

  tokens.push_back(
      Token{TokenKind::EndOfFile, std::string_view(), Span{n, n - 1}});
  return tokens;
}

}  // namespace ccred
