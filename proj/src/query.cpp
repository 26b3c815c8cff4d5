#include "mdf/query.hpp"

#include <algorithm>
#include <iterator>

#include "mdf/document.hpp"
#include "mdf/error.hpp"
#include "mdf/uri.hpp"
#include "text_util.hpp"

namespace mdf {

namespace {

Error malformed(std::string_view clause, std::string_view why) {
  return Error(ErrorCode::MalformedClause,
               "malformed clause '" + std::string(clause) + "': " + std::string(why));
}

}  // namespace

Query parse_query(std::string_view text) {
  Query q;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && detail::is_space(text[i])) ++i;
  };
  skip_ws();
  if (i == text.size()) throw Error(ErrorCode::EmptyQuery, "empty query");
  while (i < text.size()) {
    std::size_t start = i;
    while (i < text.size() && text[i] != '=' && !detail::is_space(text[i])) ++i;
    std::string_view name = text.substr(start, i - start);
    if (i == text.size() || text[i] != '=') throw malformed(name, "expected field=value");
    if (name.empty()) throw malformed(text.substr(start, 1), "missing field name");
    ++i;
    std::string_view value;
    if (i < text.size() && text[i] == '"') {
      auto close = text.find('"', i + 1);
      if (close == std::string_view::npos) {
        throw malformed(text.substr(start), "unterminated quote");
      }
      value = text.substr(i + 1, close - i - 1);
      i = close + 1;
      if (i < text.size() && !detail::is_space(text[i])) {
        throw malformed(text.substr(start, i - start + 1), "text after closing quote");
      }
    } else {
      std::size_t vstart = i;
      while (i < text.size() && !detail::is_space(text[i])) ++i;
      value = text.substr(vstart, i - vstart);
      if (value.find('"') != std::string_view::npos) {
        throw malformed(text.substr(start, i - start), "stray quote");
      }
    }
    std::string_view clause = text.substr(start, i - start);
    auto field = key_field_from_name(name);
    if (!field) throw Error(ErrorCode::UnknownField, "unknown field '" + std::string(name) + "'");
    std::vector<std::string> terms = normalize(value);
    if (terms.empty()) throw malformed(clause, "no searchable terms");
    q.clauses.push_back({*field, std::move(terms)});
    skip_ws();
  }
  return q;
}

ResultSet execute(const Query& query, const InvertedIndex& index) {
  std::vector<std::string> acc;
  bool first = true;
  for (const Clause& clause : query.clauses) {
    for (const std::string& term : clause.terms) {
      const std::set<std::string>* hits = index.find(clause.field, term);
      if (hits == nullptr) return {};
      if (first) {
        acc.assign(hits->begin(), hits->end());
        first = false;
      } else {
        std::vector<std::string> next;
        std::set_intersection(acc.begin(), acc.end(), hits->begin(), hits->end(),
                              std::back_inserter(next));
        acc = std::move(next);
      }
      if (acc.empty()) return {};
    }
  }
  return {std::move(acc)};
}

namespace {

bool carries_value(const std::vector<PropertyNode>& nodes, std::string_view entity) {
  for (const PropertyNode& node : nodes) {
    if (node.is_text() ? node.text() == entity : carries_value(node.children(), entity)) {
      return true;
    }
  }
  return false;
}

}  // namespace

EntityLocation retrieve(std::string_view entity, const std::filesystem::path& corpus_root) {
  std::vector<std::pair<std::filesystem::path, MdfDocument>> docs;
  for (const auto& file : corpus_files(corpus_root)) {
    try {
      docs.emplace_back(file, parse_mdf(read_text_file(file)));
    } catch (const Error&) {
      // unreadable or malformed files are never indexed
    }
  }
  auto found = [&](const std::filesystem::path& file) {
    return EntityLocation{file, std::string(entity), uri_fragment(entity)};
  };
  for (const auto& [file, doc] : docs) {
    for (const Description& d : doc.descriptions) {
      if (d.about && *d.about == entity) return found(file);
    }
  }
  for (const auto& [file, doc] : docs) {
    for (const Description& d : doc.descriptions) {
      if (carries_value(d.properties, entity)) return found(file);
    }
  }
  throw Error(ErrorCode::UnknownEntity, "no description of " + std::string(entity));
}

}  // namespace mdf
