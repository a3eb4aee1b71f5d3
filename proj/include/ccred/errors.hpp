#pragma once

#include <stdexcept>
#include <string>

namespace ccred {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Lexical or grammatical failure; aborts parsing of the whole file.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& message)
      : Error("syntax error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + message),
        line(line),
        column(column) {}

  int line;
  int column;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class RegionNotSiblingRun : public Error {
 public:
  using Error::Error;
};

class CsvFormatError : public Error {
 public:
  CsvFormatError(int line, const std::string& message)
      : Error("csv line " + std::to_string(line) + ": " + message),
        line(line) {}

  int line;
};

class TooLargeError : public Error {
 public:
  using Error::Error;
};

class PlanConflict : public Error {
 public:
  using Error::Error;
};

class StaleOffsets : public Error {
 public:
  using Error::Error;
};

}  // namespace ccred
