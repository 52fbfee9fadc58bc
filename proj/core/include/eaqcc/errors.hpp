#pragma once

#include <stdexcept>
#include <string>

namespace eaqcc {

// Text input that does not follow the polynomial / matrix / circuit grammar.
// Line and column are 1-based; line 0 means "single-line input".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(what), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

enum class ValidationKind {
  CatastrophicInput,
  NotDelayFree,
  RankDeficient,
  DimensionMismatch,
  ClassMismatch,
  Diagnostic,
};

const char* to_string(ValidationKind kind);

// Rejected check matrices and pipeline preconditions that do not hold.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(ValidationKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail) {}
  ValidationKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ValidationKind kind_;
  std::string detail_;
};

class WindowTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const char* to_string(ValidationKind kind) {
  switch (kind) {
    case ValidationKind::CatastrophicInput:
      return "CatastrophicInput";
    case ValidationKind::NotDelayFree:
      return "NotDelayFree";
    case ValidationKind::RankDeficient:
      return "RankDeficient";
    case ValidationKind::DimensionMismatch:
      return "DimensionMismatch";
    case ValidationKind::ClassMismatch:
      return "ClassMismatch";
    case ValidationKind::Diagnostic:
      return "Diagnostic";
  }
  return "Unknown";
}

}  // namespace eaqcc
