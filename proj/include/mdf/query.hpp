#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdf/index.hpp"

namespace mdf {

struct Clause {
  KeyField field;
  std::vector<std::string> terms;  // normalized, non-empty

  bool operator==(const Clause&) const = default;
};

struct Query {
  std::vector<Clause> clauses;  // conjunctive, non-empty

  bool operator==(const Query&) const = default;
};

/// Whitespace-separated `field=value` or `field="several words"` clauses.
/// Throws Error with EmptyQuery, UnknownField or MalformedClause.
Query parse_query(std::string_view text);

struct ResultSet {
  std::vector<std::string> entities;  // sorted, unique

  bool operator==(const ResultSet&) const = default;
};

ResultSet execute(const Query& query, const InvertedIndex& index);

struct EntityLocation {
  std::filesystem::path source;
  std::string entity;
  std::optional<std::string> fragment;

  bool operator==(const EntityLocation&) const = default;
};

/// First corpus file (in path order) whose description is About `entity`,
/// or failing that, that carries it as a property value. Throws
/// Error(UnknownEntity).
EntityLocation retrieve(std::string_view entity, const std::filesystem::path& corpus_root);

}  // namespace mdf
