#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "mdf/scheme.hpp"

namespace mdf {

/// (scheme name, written local name) -> declared local name.
using AliasTable = std::map<std::pair<std::string, std::string>, std::string, std::less<>>;

/// Local stand-in for fetching scheme URIs: maps each URI to a DSD file and
/// carries the property-name alias table. Every referenced DSD has been
/// parsed by the time a Catalog exists.
struct Catalog {
  std::map<std::string, std::filesystem::path, std::less<>> entries;
  AliasTable aliases;
  std::map<std::filesystem::path, SchemeDecl> schemes;  // keyed by entry path

  /// The scheme declared by the DSD behind `uri`, or nullptr.
  const SchemeDecl* scheme_for(std::string_view uri) const;
};

/// Parses catalog text. Relative paths resolve against `base_dir`.
/// Throws LineError (CatalogSyntaxError, DanglingPath, BadDsd, IoError).
Catalog parse_catalog(std::string_view text, const std::filesystem::path& base_dir);

/// Reads and parses a catalog file; paths are relative to its directory.
Catalog load_catalog(const std::filesystem::path& path);

}  // namespace mdf
