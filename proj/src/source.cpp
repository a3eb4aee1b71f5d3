#include "ccred/source.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ccred/errors.hpp"

namespace ccred {

SourceFile SourceFile::from_text(std::string path, std::string text) {
  SourceFile file;
  file.path_ = std::move(path);
  file.text_ = std::move(text);
  file.line_starts_.push_back(0);
  for (int i = 0; i < static_cast<int>(file.text_.size()); ++i) {
    if (file.text_[i] == '\n') file.line_starts_.push_back(i + 1);
  }
  return file;
}

SourceFile SourceFile::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_text(path, buffer.str());
}

int SourceFile::line_of(int offset) const {
  auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
  return static_cast<int>(it - line_starts_.begin()) - 1;
}

LineCol SourceFile::line_col(int offset) const {
  int line = line_of(offset);
  return LineCol{line + 1, offset - line_starts_[line] + 1};
}

}  // namespace ccred
