#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mdf {

/// A comment kept from the source, emitted before child number `before`
/// of the node that owns it.
struct Annotation {
  std::size_t before = 0;
  std::string text;

  bool operator==(const Annotation&) const = default;
};

/// `<?MDF VP:NAME href="uri" ?>`; `name` excludes the `VP:` prefix.
struct VpDecl {
  std::string name;
  std::string href;

  bool operator==(const VpDecl&) const = default;
};

struct PropertyNode {
  using Children = std::vector<PropertyNode>;

  std::string prefix;
  std::string local;
  std::variant<std::string, Children> value;
  std::vector<Annotation> comments;

  bool is_text() const { return std::holds_alternative<std::string>(value); }
  const std::string& text() const { return std::get<std::string>(value); }
  const Children& children() const { return std::get<Children>(value); }
  std::string qname() const { return prefix + ":" + local; }

  bool operator==(const PropertyNode&) const = default;
};

struct Description {
  std::optional<std::string> about;
  std::vector<PropertyNode> properties;
  std::vector<Annotation> comments;

  bool operator==(const Description&) const = default;
};

struct MdfDocument {
  /// Absent means the default MD2L syntax.
  std::optional<std::string> syntax_uri;
  std::vector<VpDecl> viewpoints;
  std::vector<Description> descriptions;
  std::vector<Annotation> comments;

  const VpDecl* find_viewpoint(std::string_view name) const;

  bool operator==(const MdfDocument&) const = default;
};

/// Parses an MDF description. Throws ParseError.
MdfDocument parse_mdf(std::string_view source);

/// Canonical text form; parse_mdf(serialize(d)) == d.
std::string serialize(const MdfDocument& doc);

/// Whole file as bytes. Throws Error(IoError).
std::string read_text_file(const std::filesystem::path& path);

/// One node per line, two spaces of indentation per level.
std::string dom_tree(const MdfDocument& doc);

}  // namespace mdf
