#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdf/document.hpp"
#include "mdf/registry.hpp"
#include "mdf/scheme.hpp"

namespace mdf {

enum class Severity { Error, Warning };

enum class FindingCode {
  UnresolvedViewpoint,
  UnknownViewpoint,
  UnknownDescriptor,
  TypeMismatch,
  UncheckedType,
  RepeatedDescriptor,
  NestedNotAllowed,
  UnresolvedScheme,
};

std::string_view to_string(Severity severity);
std::string_view to_string(FindingCode code);

struct Finding {
  Severity severity;
  FindingCode code;
  std::string location;  // e.g. "Description[0]/MOVIE:Scene/SCENE:ID"
  std::string message;

  bool operator==(const Finding&) const = default;
};

struct ValidationReport {
  std::vector<Finding> findings;  // document order

  bool ok() const;
  std::size_t count(FindingCode code) const;
  std::size_t count(Severity severity) const;

  /// "error: CODE at LOCATION: message" per line.
  std::string to_text() const;
  /// "Severity\tCODE\tLOCATION\tmessage" per line.
  std::string to_porcelain() const;

  bool operator==(const ValidationReport&) const = default;
};

struct ValueCheck {
  enum class Status { Ok, Unchecked, Mismatch };
  Status status = Status::Ok;
  std::string detail;

  bool ok() const { return status != Status::Mismatch; }
};

/// Checks `text` (already trimmed) against a value type. Never throws.
ValueCheck validate_value(ValueKind kind, std::string_view text);

/// A property element looked up in its scheme. `scheme` is the enclosing
/// nested scheme, or for top-level nodes the scheme bound to the prefix.
struct PropertyLookup {
  const ResolvedScheme* scheme = nullptr;
  const ResolvedDescriptor* descriptor = nullptr;
};

/// `context` is the referenced scheme for nested nodes, nullptr at top level.
PropertyLookup lookup_property(const ViewpointBinding& binding, const PropertyNode& node,
                               const ResolvedScheme* context);

/// Checks every property of `doc` against the schemes in `binding`.
ValidationReport validate(const MdfDocument& doc, const ViewpointBinding& binding);

}  // namespace mdf
