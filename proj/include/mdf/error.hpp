#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mdf {

enum class ErrorCode {
  // lexical / syntactic
  SyntaxError,
  UnterminatedString,
  UnterminatedComment,
  IllegalCharacter,
  MissingViewpointDecl,
  MismatchedTag,
  DuplicateViewpointName,
  UnknownValueType,
  DuplicateDescriptor,
  // catalog and registry
  IoError,
  CatalogSyntaxError,
  DanglingPath,
  BadDsd,
  DanglingAlias,
  DuplicateScheme,
  QualifiedIdCollision,
  UnknownScheme,
  MissingParent,
  CyclicHierarchy,
  // timecodes
  TimecodeSyntax,
  FieldRange,
  FrameFieldExceedsRate,
  NegativeDuration,
  // index and query
  FormatVersionMismatch,
  CorruptIndex,
  EmptyQuery,
  UnknownField,
  MalformedClause,
  UnknownEntity,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// An error anchored at a source position (1-based line and column).
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column,
             const std::string& message)
      : Error(code, message), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Raised by the catalog loader and by index reading; carries the line of the
/// offending input (0 when not line-specific).
class LineError : public Error {
 public:
  LineError(ErrorCode code, std::size_t line, const std::string& message)
      : Error(code, message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mdf
