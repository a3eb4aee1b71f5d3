#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ccred {

// Inclusive character interval [begin, end]. All offsets produced by the
// frontend (and consumed by the refactoring cache and conflict graph) use
// this convention: `end` is the offset of the last character.
struct Span {
  int begin = 0;
  int end = -1;

  int length() const { return end - begin + 1; }

  bool operator==(const Span&) const = default;

  bool contains(const Span& other) const {
    return begin <= other.begin && other.end <= end;
  }

  // Proper subset; shared endpoints are allowed as long as the spans differ.
  bool properly_contains(const Span& other) const {
    return contains(other) && !(*this == other);
  }

  bool overlaps(const Span& other) const {
    return begin <= other.end && other.begin <= end;
  }
};

struct LineCol {
  int line = 1;    // 1-based
  int column = 1;  // 1-based
};

class SourceFile {
 public:
  SourceFile() = default;

  static SourceFile from_text(std::string path, std::string text);
  static SourceFile load(const std::string& path);  // throws IoError

  const std::string& path() const { return path_; }
  const std::string& text() const { return text_; }
  const std::vector<int>& line_starts() const { return line_starts_; }

  int size() const { return static_cast<int>(text_.size()); }

  // 0-based index of the line containing `offset`.
  int line_of(int offset) const;
  LineCol line_col(int offset) const;

  // Offset of the first character of 0-based line `index`.
  int line_start(int index) const { return line_starts_[index]; }

  std::string_view slice(Span span) const {
    if (span.length() <= 0) return {};
    return std::string_view(text_).substr(span.begin, span.length());
  }

 private:
  std::string path_;
  std::string text_;
  std::vector<int> line_starts_;
};

}  // namespace ccred
