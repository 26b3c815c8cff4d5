#include "mdf/registry.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "mdf/error.hpp"

namespace mdf {

const ResolvedDescriptor* ResolvedScheme::find(std::string_view local) const {
  auto it = std::find_if(descriptors.begin(), descriptors.end(),
                         [&](const ResolvedDescriptor& d) { return d.decl.local == local; });
  return it == descriptors.end() ? nullptr : &*it;
}

std::vector<std::string> ResolvedScheme::names() const {
  std::vector<std::string> out;
  out.reserve(descriptors.size());
  for (const auto& d : descriptors) out.push_back(d.decl.local);
  return out;
}

std::string to_string(const HierarchyFault& fault) {
  std::string out;
  if (fault.kind == HierarchyFault::Kind::MissingParent) {
    return "MissingParent(" + fault.path.at(0) + ", " + fault.path.at(1) + ")";
  }
  out = "Cycle(";
  for (std::size_t i = 0; i < fault.path.size(); ++i) {
    if (i) out += " -> ";
    out += fault.path[i];
  }
  return out + ")";
}

Registry::Registry(std::string root_scheme)
    : root_(std::move(root_scheme)), cache_(std::make_shared<Cache>()) {}

void Registry::add(SchemeDecl decl) {
  if (schemes_.contains(decl.name)) {
    throw Error(ErrorCode::DuplicateScheme, "scheme " + decl.name + " registered twice");
  }
  std::unordered_set<std::string> ids;
  for (const auto& [_, s] : schemes_) {
    for (const auto& d : s.declarations) ids.insert(d.qualified_id);
  }
  for (const auto& d : decl.declarations) {
    if (ids.contains(d.qualified_id)) {
      throw Error(ErrorCode::QualifiedIdCollision,
                  "descriptor id " + d.qualified_id + " already defined");
    }
  }
  std::string name = decl.name;
  schemes_.emplace(std::move(name), std::move(decl));
  // Copies of this registry keep the old cache, which stays valid for them.
  cache_ = std::make_shared<Cache>();
}

bool Registry::contains(std::string_view name) const {
  return schemes_.find(name) != schemes_.end();
}

const SchemeDecl* Registry::find(std::string_view name) const {
  auto it = schemes_.find(name);
  return it == schemes_.end() ? nullptr : &it->second;
}

std::vector<std::string> Registry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : schemes_) out.push_back(name);
  return out;
}

std::vector<std::string> Registry::effective_parents(std::string_view name) const {
  const SchemeDecl* decl = find(name);
  if (decl == nullptr) return {};
  std::vector<std::string> out;
  for (const ParentRef& p : decl->parents) out.push_back(p.name);
  if (out.empty() && name != root_ && contains(root_)) out.push_back(root_);
  return out;
}

std::vector<HierarchyFault> Registry::check_hierarchy() const {
  std::vector<HierarchyFault> faults;
  for (const auto& [name, _] : schemes_) {
    for (const std::string& parent : effective_parents(name)) {
      if (!contains(parent)) {
        faults.push_back({HierarchyFault::Kind::MissingParent, {name, parent}});
      }
    }
  }
  // Elementary cycles: from each start node, walk only through nodes that
  // sort after it, so every cycle is found once, from its smallest member.
  std::vector<std::string> path;
  std::set<std::string, std::less<>> on_path;
  auto walk = [&](auto&& self, const std::string& start, const std::string& node) -> void {
    for (const std::string& parent : effective_parents(node)) {
      if (!contains(parent)) continue;
      if (parent == start) {
        std::vector<std::string> cycle = path;
        cycle.push_back(start);
        faults.push_back({HierarchyFault::Kind::Cycle, std::move(cycle)});
        continue;
      }
      if (parent < start || on_path.contains(parent)) continue;
      path.push_back(parent);
      on_path.insert(parent);
      self(self, start, parent);
      on_path.erase(parent);
      path.pop_back();
    }
  };
  for (const auto& [name, _] : schemes_) {
    path = {name};
    on_path = {name};
    walk(walk, name, name);
  }
  return faults;
}

ResolvedScheme Registry::resolve(std::string_view name) const {
  std::shared_ptr<Cache> cache = cache_;
  {
    std::lock_guard lock(cache->mutex);
    auto it = cache->resolved.find(name);
    if (it != cache->resolved.end()) return it->second;
  }
  ResolvedScheme resolved = compute(name);
  std::lock_guard lock(cache->mutex);
  cache->resolved.emplace(resolved.name, resolved);
  return resolved;
}

ResolvedScheme Registry::compute(std::string_view name) const {
  const SchemeDecl* self = find(name);
  if (self == nullptr) {
    throw Error(ErrorCode::UnknownScheme, "unknown scheme " + std::string(name));
  }
  ResolvedScheme out;
  out.name = self->name;

  std::set<std::string, std::less<>> visited{self->name};
  std::vector<std::string> stack{self->name};
  auto visit = [&](auto&& rec, const std::string& node) -> void {
    for (const std::string& parent : effective_parents(node)) {
      if (std::find(stack.begin(), stack.end(), parent) != stack.end()) {
        throw Error(ErrorCode::CyclicHierarchy,
                    "cyclic inheritance through " + node + " -> " + parent);
      }
      if (!contains(parent)) {
        throw Error(ErrorCode::MissingParent,
                    node + " names unregistered parent " + parent);
      }
      if (!visited.insert(parent).second) continue;
      out.lineage.push_back(parent);
      stack.push_back(parent);
      rec(rec, parent);
      stack.pop_back();
    }
  };
  visit(visit, self->name);

  std::set<std::string, std::less<>> seen;
  auto take = [&](const SchemeDecl& scheme) {
    for (const DescriptorDecl& d : scheme.declarations) {
      if (seen.insert(d.local).second) out.descriptors.push_back({d, scheme.name});
    }
  };
  take(*self);
  for (const std::string& ancestor : out.lineage) take(*find(ancestor));
  return out;
}

const ResolvedScheme* ViewpointBinding::scheme(std::string_view viewpoint) const {
  auto it = bindings.find(viewpoint);
  return it == bindings.end() ? nullptr : &it->second;
}

bool ViewpointBinding::is_unresolved(std::string_view viewpoint) const {
  return std::find(unresolved.begin(), unresolved.end(), viewpoint) != unresolved.end();
}

std::optional<std::string> ViewpointBinding::canonical_local(const ResolvedScheme& scheme,
                                                             std::string_view written) const {
  if (scheme.find(written) != nullptr) return std::string(written);
  auto lookup = [&](const std::string& owner) -> std::optional<std::string> {
    auto it = aliases.find(std::pair{owner, std::string(written)});
    if (it != aliases.end() && scheme.find(it->second) != nullptr) return it->second;
    return std::nullopt;
  };
  if (auto hit = lookup(scheme.name)) return hit;
  for (const std::string& ancestor : scheme.lineage) {
    if (auto hit = lookup(ancestor)) return hit;
  }
  return std::nullopt;
}

ViewpointBinding bind_viewpoints(const MdfDocument& doc, const Registry& registry,
                                 const Catalog& catalog) {
  ViewpointBinding out;
  out.aliases = catalog.aliases;
  auto resolve_uri = [&](std::string_view uri) -> std::optional<ResolvedScheme> {
    const SchemeDecl* decl = catalog.scheme_for(uri);
    if (decl == nullptr || !registry.contains(decl->name)) return std::nullopt;
    try {
      return registry.resolve(decl->name);
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  std::deque<const ResolvedScheme*> pending;
  for (const VpDecl& vp : doc.viewpoints) {
    if (auto resolved = resolve_uri(vp.href)) {
      auto [it, _] = out.bindings.insert_or_assign(vp.name, std::move(*resolved));
      pending.push_back(&it->second);
    } else {
      out.unresolved.push_back(vp.name);
    }
  }
  while (!pending.empty()) {
    const ResolvedScheme* s = pending.front();
    pending.pop_front();
    for (const ResolvedDescriptor& d : s->descriptors) {
      if (d.decl.value_type.kind != ValueKind::SCHEME_REF) continue;
      const std::string& uri = d.decl.value_type.scheme_uri;
      if (out.scheme_refs.contains(uri)) continue;
      if (auto resolved = resolve_uri(uri)) {
        auto [it, _] = out.scheme_refs.emplace(uri, std::move(*resolved));
        pending.push_back(&it->second);
      }
    }
  }
  return out;
}

Registry build_registry(const Catalog& catalog) {
  Registry registry;
  for (const auto& [path, decl] : catalog.schemes) {
    try {
      registry.add(decl);
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ": " + e.what());
    }
  }
  for (const HierarchyFault& fault : registry.check_hierarchy()) {
    throw Error(fault.kind == HierarchyFault::Kind::Cycle ? ErrorCode::CyclicHierarchy
                                                          : ErrorCode::MissingParent,
                "scheme hierarchy: " + to_string(fault));
  }
  for (const auto& [key, target] : catalog.aliases) {
    const auto& [scheme, written] = key;
    if (!registry.contains(scheme) || registry.resolve(scheme).find(target) == nullptr) {
      throw Error(ErrorCode::DanglingAlias,
                  "alias " + scheme + " " + written + " = " + target +
                      ": no such descriptor in " + scheme);
    }
  }
  return registry;
}

Schemas load_schemas(const std::filesystem::path& catalog_path) {
  Catalog catalog = load_catalog(catalog_path);
  Registry registry = build_registry(catalog);
  return Schemas{std::move(catalog), std::move(registry)};
}

}  // namespace mdf
