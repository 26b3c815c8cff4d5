#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdf/catalog.hpp"
#include "mdf/document.hpp"
#include "mdf/scheme.hpp"

namespace mdf {

struct ResolvedDescriptor {
  DescriptorDecl decl;
  std::string origin;  // scheme that declared it

  bool operator==(const ResolvedDescriptor&) const = default;
};

/// A scheme's descriptor set after inheritance: own declarations first, then
/// each ancestor's surviving declarations in lineage order.
struct ResolvedScheme {
  std::string name;
  std::vector<ResolvedDescriptor> descriptors;
  std::vector<std::string> lineage;

  const ResolvedDescriptor* find(std::string_view local) const;
  std::vector<std::string> names() const;

  bool operator==(const ResolvedScheme&) const = default;
};

struct HierarchyFault {
  enum class Kind { Cycle, MissingParent };
  Kind kind;
  // Cycle: the closed path, first node repeated at the end.
  // MissingParent: {child, parent}.
  std::vector<std::string> path;

  bool operator==(const HierarchyFault&) const = default;
};

std::string to_string(const HierarchyFault& fault);

/// Registered description schemes. Construction is single-threaded; once
/// built, resolve() may be called concurrently.
class Registry {
 public:
  /// A scheme with no declared Parent inherits from `root_scheme` when that
  /// scheme is registered.
  explicit Registry(std::string root_scheme = "DOC");

  /// Throws Error (DuplicateScheme, QualifiedIdCollision).
  void add(SchemeDecl decl);

  bool contains(std::string_view name) const;
  const SchemeDecl* find(std::string_view name) const;
  std::size_t size() const { return schemes_.size(); }
  std::vector<std::string> names() const;
  const std::string& root_scheme() const { return root_; }

  /// Declared parents, or the root scheme for parentless schemes.
  std::vector<std::string> effective_parents(std::string_view name) const;

  /// Every missing parent and every elementary cycle in the parent graph,
  /// cycles rotated to start at their smallest name.
  std::vector<HierarchyFault> check_hierarchy() const;

  /// Depth-first, left-to-right over parents; first-seen ancestor
  /// declaration wins and own declarations shadow inherited ones.
  /// Throws Error (UnknownScheme, MissingParent, CyclicHierarchy).
  ResolvedScheme resolve(std::string_view name) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::string, ResolvedScheme, std::less<>> resolved;
  };

  ResolvedScheme compute(std::string_view name) const;

  std::string root_;
  std::map<std::string, SchemeDecl, std::less<>> schemes_;
  std::shared_ptr<Cache> cache_;
};

/// Viewpoints of one document bound to resolved schemes.
struct ViewpointBinding {
  std::map<std::string, ResolvedScheme, std::less<>> bindings;
  std::vector<std::string> unresolved;
  /// Every scheme reachable through SCHEME_REF descriptors, by URI.
  std::map<std::string, ResolvedScheme, std::less<>> scheme_refs;
  AliasTable aliases;

  const ResolvedScheme* scheme(std::string_view viewpoint) const;
  bool is_unresolved(std::string_view viewpoint) const;

  /// Declared local name for `written` in `scheme`: exact match first, then
  /// aliases registered for the scheme or any of its ancestors.
  std::optional<std::string> canonical_local(const ResolvedScheme& scheme,
                                             std::string_view written) const;
};

ViewpointBinding bind_viewpoints(const MdfDocument& doc, const Registry& registry,
                                 const Catalog& catalog);

/// A loaded catalog plus the registry built from every DSD it names.
struct Schemas {
  Catalog catalog;
  Registry registry;

  ViewpointBinding bind(const MdfDocument& doc) const {
    return bind_viewpoints(doc, registry, catalog);
  }
};

/// Registers every catalog DSD, checks the hierarchy and alias targets.
/// Throws Error (DuplicateScheme, MissingParent, CyclicHierarchy,
/// DanglingAlias).
Registry build_registry(const Catalog& catalog);

Schemas load_schemas(const std::filesystem::path& catalog_path);

}  // namespace mdf
