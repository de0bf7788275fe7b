#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "ast.hpp"

namespace seqsem {

// Base of every diagnosed failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, std::string detail, SourceLocation loc = {})
      : std::runtime_error(format(kind, detail, loc)),
        kind_(std::move(kind)),
        detail_(std::move(detail)),
        location_(loc) {}

  const std::string& kind() const { return kind_; }
  const std::string& detail() const { return detail_; }
  SourceLocation location() const { return location_; }

 private:
  static std::string format(const std::string& kind, const std::string& detail,
                            SourceLocation loc) {
    std::string out;
    if (loc.known()) out += to_string(loc) + ": ";
    out += kind;
    if (!detail.empty()) out += ": " + detail;
    return out;
  }

  std::string kind_;
  std::string detail_;
  SourceLocation location_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::string detail, SourceLocation loc) : Error("SyntaxError", std::move(detail), loc) {}
};

class DuplicateLifelineDecl : public Error {
 public:
  DuplicateLifelineDecl(const LifelineName& name, SourceLocation loc)
      : Error("DuplicateLifelineDecl", name.str(), loc) {}
};

class EmptyBlock : public Error {
 public:
  EmptyBlock(const std::string& block, SourceLocation loc)
      : Error("EmptyBlock", "'" + block + "' operand has no statements", loc) {}
};

// Namespace violations found while evaluating or validating a diagram.
class NamespaceError : public Error {
 public:
  NamespaceError(std::string kind, const LifelineName& name, SourceLocation loc)
      : Error(std::move(kind), name.str(), loc), name_(name) {}
  const LifelineName& name() const { return name_; }

 private:
  LifelineName name_;
};

class UnknownLifeline : public NamespaceError {
 public:
  UnknownLifeline(const LifelineName& name, SourceLocation loc)
      : NamespaceError("UnknownLifeline", name, loc) {}
};

class DuplicateCreate : public NamespaceError {
 public:
  DuplicateCreate(const LifelineName& name, SourceLocation loc)
      : NamespaceError("DuplicateCreate", name, loc) {}
};

class DestroyAbsent : public NamespaceError {
 public:
  DestroyAbsent(const LifelineName& name, SourceLocation loc)
      : NamespaceError("DestroyAbsent", name, loc) {}
};

class TraceSetOverflow : public Error {
 public:
  explicit TraceSetOverflow(std::size_t limit, SourceLocation loc = {})
      : Error("TraceSetOverflow", "trace set exceeds " + std::to_string(limit) + " traces", loc),
        limit_(limit) {}
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

class InputTooLarge : public Error {
 public:
  InputTooLarge(std::size_t size, std::size_t limit)
      : Error("InputTooLarge",
              "input of size " + std::to_string(size) + " exceeds limit " + std::to_string(limit)) {}
};

class LogParseError : public Error {
 public:
  LogParseError(int line, std::string detail)
      : Error("LogParseError", "line " + std::to_string(line) + ": " + detail), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace seqsem
