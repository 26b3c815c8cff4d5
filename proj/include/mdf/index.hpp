#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mdf/document.hpp"
#include "mdf/registry.hpp"

namespace mdf {

// Enumerators are in alphabetical order of their names so that ordering
// postings by field agrees with ordering them by field name.
enum class KeyField { Author, Description, Format, Publisher, Subject, Title, Type };

inline constexpr KeyField kAllKeyFields[] = {
    KeyField::Author,  KeyField::Description, KeyField::Format, KeyField::Publisher,
    KeyField::Subject, KeyField::Title,       KeyField::Type,
};

std::string_view to_string(KeyField field);
std::optional<KeyField> key_field_from_name(std::string_view name);

/// Key field indexed for a declared descriptor name (Title, Subj, Content,
/// Author, Pub, Format, Res), if any.
std::optional<KeyField> key_field_for_descriptor(std::string_view declared_local);

struct KeyDescriptorRecord {
  std::string entity;
  KeyField field;
  std::string raw_value;

  bool operator==(const KeyDescriptorRecord&) const = default;
};

struct Extraction {
  std::vector<KeyDescriptorRecord> records;
  std::vector<std::string> warnings;
};

/// One record per key-field property occurrence, nested ones included.
/// Nested records belong to the nested node's Identifier when it has one,
/// otherwise to the enclosing description's About.
Extraction extract_key_descriptors(const MdfDocument& doc, const ViewpointBinding& binding);

/// Lowercase, split on every character outside [a-z0-9], drop empties.
std::vector<std::string> normalize(std::string_view raw_value);

struct InvertedIndex {
  using Key = std::pair<KeyField, std::string>;

  std::map<Key, std::set<std::string>> postings;
  std::vector<std::string> entity_table;  // sorted, unique

  std::size_t doc_count() const { return entity_table.size(); }
  const std::set<std::string>* find(KeyField field, std::string_view term) const;

  bool operator==(const InvertedIndex&) const = default;
};

InvertedIndex build_index(std::span<const KeyDescriptorRecord> records);

/// Same result as build_index, built from `threads` partial maps merged in
/// key order.
InvertedIndex build_index_parallel(std::span<const KeyDescriptorRecord> records,
                                   unsigned threads);

/// Text form:
///   MDFIDX 1
///   entities N
///   <N entity URIs, sorted>
///   <field> <term> <ord>[,<ord>...]   sorted by (field, term)
std::string format_index(const InvertedIndex& index);

/// Accepts only the canonical text form, so format_index(parse_index(s)) == s.
/// Throws LineError (FormatVersionMismatch, CorruptIndex).
InvertedIndex parse_index(std::string_view text);

void write_index(const InvertedIndex& index, const std::filesystem::path& path);
InvertedIndex read_index(const std::filesystem::path& path);

/// Every *.mdf file below `root`, sorted by path.
std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& root);

struct CorpusIndex {
  InvertedIndex index;
  std::size_t files_indexed = 0;
  std::vector<std::string> warnings;  // one line each, file path first
};

/// Parses, validates and extracts every corpus file, then builds the index.
/// Files that fail to read, parse or validate (Error findings) are skipped
/// with a warning. threads == 0 means one per hardware thread.
CorpusIndex index_corpus(const std::filesystem::path& root, const Schemas& schemas,
                         unsigned threads = 0);

}  // namespace mdf
