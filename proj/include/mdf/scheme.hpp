#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mdf {

enum class Multiplicity { One, Many };

enum class ValueKind { PCDATA, DATE, TIME, FLOAT, URI, ARRAY, COMPOSITE, BLOB, SCHEME_REF };

std::string_view to_string(ValueKind kind);

/// Maps a `#TAG` (without the '#') to its kind; SCHEME_REF has no tag.
std::optional<ValueKind> value_kind_from_tag(std::string_view tag);

struct ValueType {
  ValueKind kind = ValueKind::PCDATA;
  std::string scheme_uri;  // set only for SCHEME_REF

  bool operator==(const ValueType&) const = default;
};

struct DescriptorDecl {
  std::string local;
  ValueType value_type;
  Multiplicity multiplicity = Multiplicity::One;
  std::string qualified_id;  // "SCHEME:local"

  bool operator==(const DescriptorDecl&) const = default;
};

struct ParentRef {
  std::string name;
  std::string uri;

  bool operator==(const ParentRef&) const = default;
};

struct ContentItem {
  std::string name;
  Multiplicity multiplicity = Multiplicity::One;

  bool operator==(const ContentItem&) const = default;
};

struct AttributeDecl {
  std::string name;
  std::string type;
  bool required = false;

  bool operator==(const AttributeDecl&) const = default;
};

struct DsRef {
  std::string name;
  std::string uri;

  bool operator==(const DsRef&) const = default;
};

/// A description scheme as written in its DSD file.
struct SchemeDecl {
  std::string name;
  std::vector<ParentRef> parents;
  std::vector<std::string> children;  // informational only
  std::vector<ContentItem> content_model;
  std::vector<AttributeDecl> attlist;
  /// `<!D Name (#TYPE)>` and `<!DS Name "uri">` declarations in source
  /// order; scheme references carry ValueKind::SCHEME_REF.
  std::vector<DescriptorDecl> declarations;

  /// Only the `<!D>` declarations.
  std::vector<DescriptorDecl> descriptors() const;
  /// Only the nested-scheme references.
  std::vector<DsRef> ds_refs() const;
  const DescriptorDecl* find(std::string_view local) const;

  bool operator==(const SchemeDecl&) const = default;
};

/// Parses a DSD file. Throws ParseError (SyntaxError, UnknownValueType,
/// DuplicateDescriptor, plus lexical errors).
SchemeDecl parse_dsd(std::string_view source);

/// Content-model names that neither name a declaration nor expand to
/// `Name_*` declarations.
std::vector<std::string> undeclared_content_names(const SchemeDecl& decl);

}  // namespace mdf
