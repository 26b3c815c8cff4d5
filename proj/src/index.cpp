#include "mdf/index.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <thread>

#include "mdf/error.hpp"
#include "mdf/uri.hpp"
#include "mdf/validator.hpp"
#include "text_util.hpp"

namespace mdf {

std::string_view to_string(KeyField field) {
  switch (field) {
    case KeyField::Author: return "author";
    case KeyField::Description: return "description";
    case KeyField::Format: return "format";
    case KeyField::Publisher: return "publisher";
    case KeyField::Subject: return "subject";
    case KeyField::Title: return "title";
    case KeyField::Type: return "type";
  }
  return "?";
}

std::optional<KeyField> key_field_from_name(std::string_view name) {
  for (KeyField f : kAllKeyFields) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

std::optional<KeyField> key_field_for_descriptor(std::string_view declared_local) {
  static const std::pair<std::string_view, KeyField> kMap[] = {
      {"Title", KeyField::Title},   {"Subj", KeyField::Subject},
      {"Content", KeyField::Description}, {"Author", KeyField::Author},
      {"Pub", KeyField::Publisher}, {"Format", KeyField::Format},
      {"Res", KeyField::Type},
  };
  for (const auto& [name, field] : kMap) {
    if (name == declared_local) return field;
  }
  return std::nullopt;
}

namespace {

class Extractor {
 public:
  explicit Extractor(const ViewpointBinding& binding) : binding_(binding) {}

  void walk(const std::vector<PropertyNode>& nodes, const ResolvedScheme* context,
            std::string entity) {
    if (context != nullptr) {
      if (auto id = identifier(nodes, context)) entity = *id;
    }
    for (const PropertyNode& node : nodes) {
      PropertyLookup found = lookup_property(binding_, node, context);
      if (found.descriptor == nullptr) continue;
      const DescriptorDecl& decl = found.descriptor->decl;
      if (node.is_text()) {
        if (auto field = key_field_for_descriptor(decl.local)) {
          out.records.push_back({entity, *field, node.text()});
        }
        continue;
      }
      if (decl.value_type.kind != ValueKind::SCHEME_REF) continue;
      auto ref = binding_.scheme_refs.find(decl.value_type.scheme_uri);
      if (ref != binding_.scheme_refs.end()) walk(node.children(), &ref->second, entity);
    }
  }

  Extraction out;

 private:
  std::optional<std::string> identifier(const std::vector<PropertyNode>& nodes,
                                        const ResolvedScheme* context) const {
    for (const PropertyNode& node : nodes) {
      if (!node.is_text()) continue;
      PropertyLookup found = lookup_property(binding_, node, context);
      if (found.descriptor == nullptr) continue;
      const DescriptorDecl& decl = found.descriptor->decl;
      if (decl.local == "Identifier" && decl.value_type.kind == ValueKind::URI &&
          is_uri_reference(node.text())) {
        return node.text();
      }
    }
    return std::nullopt;
  }

  const ViewpointBinding& binding_;
};

}  // namespace

Extraction extract_key_descriptors(const MdfDocument& doc, const ViewpointBinding& binding) {
  Extractor ex(binding);
  for (std::size_t i = 0; i < doc.descriptions.size(); ++i) {
    const Description& d = doc.descriptions[i];
    if (!d.about) {
      ex.out.warnings.push_back("Description[" + std::to_string(i) +
                                "] has no About attribute; not indexed");
      continue;
    }
    ex.walk(d.properties, nullptr, *d.about);
  }
  return std::move(ex.out);
}

std::vector<std::string> normalize(std::string_view raw_value) {
  std::vector<std::string> terms;
  std::string current;
  for (char c : raw_value) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if ((c >= 'a' && c <= 'z') || detail::is_digit(c)) {
      current.push_back(c);
    } else if (!current.empty()) {
      terms.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) terms.push_back(std::move(current));
  return terms;
}

const std::set<std::string>* InvertedIndex::find(KeyField field, std::string_view term) const {
  auto it = postings.find(Key{field, std::string(term)});
  return it == postings.end() ? nullptr : &it->second;
}

namespace {

struct Partial {
  std::map<InvertedIndex::Key, std::set<std::string>> postings;
  std::set<std::string> entities;

  void add(const KeyDescriptorRecord& r) {
    entities.insert(r.entity);
    for (std::string& term : normalize(r.raw_value)) {
      postings[{r.field, std::move(term)}].insert(r.entity);
    }
  }
};

InvertedIndex finish(Partial p) {
  InvertedIndex index;
  index.postings = std::move(p.postings);
  index.entity_table.assign(p.entities.begin(), p.entities.end());
  return index;
}

}  // namespace

InvertedIndex build_index(std::span<const KeyDescriptorRecord> records) {
  Partial p;
  for (const auto& r : records) p.add(r);
  return finish(std::move(p));
}

InvertedIndex build_index_parallel(std::span<const KeyDescriptorRecord> records,
                                   unsigned threads) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(records.size())));
  if (threads <= 1) return build_index(records);
  std::vector<Partial> parts(threads);
  {
    std::vector<std::jthread> workers;
    std::size_t chunk = (records.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t begin = std::min(records.size(), t * chunk);
      std::size_t end = std::min(records.size(), begin + chunk);
      workers.emplace_back([&parts, t, slice = records.subspan(begin, end - begin)] {
        for (const auto& r : slice) parts[t].add(r);
      });
    }
  }
  Partial merged = std::move(parts.front());
  for (std::size_t t = 1; t < parts.size(); ++t) {
    merged.entities.merge(parts[t].entities);
    for (auto& [key, uris] : parts[t].postings) merged.postings[key].merge(uris);
  }
  return finish(std::move(merged));
}

std::string format_index(const InvertedIndex& index) {
  std::string out = "MDFIDX 1\nentities " + std::to_string(index.entity_table.size()) + "\n";
  std::map<std::string_view, std::size_t> ordinal;
  for (std::size_t i = 0; i < index.entity_table.size(); ++i) {
    out += index.entity_table[i] + "\n";
    ordinal.emplace(index.entity_table[i], i);
  }
  for (const auto& [key, uris] : index.postings) {
    std::vector<std::size_t> ords;
    for (const auto& uri : uris) ords.push_back(ordinal.at(uri));
    std::sort(ords.begin(), ords.end());
    out += std::string(to_string(key.first)) + " " + key.second + " ";
    for (std::size_t i = 0; i < ords.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(ords[i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

// Canonical non-negative decimal: no sign, no leading zeros.
std::optional<std::size_t> parse_count(std::string_view s) {
  if (s.empty() || (s.size() > 1 && s.front() == '0')) return std::nullopt;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

bool is_term(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || detail::is_digit(c);
  });
}

}  // namespace

InvertedIndex parse_index(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      throw LineError(ErrorCode::CorruptIndex, lines.size() + 1, "index: missing final newline");
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  auto corrupt = [](std::size_t line, const std::string& what) {
    return LineError(ErrorCode::CorruptIndex, line,
                     "index line " + std::to_string(line) + ": " + what);
  };
  if (lines.empty()) throw corrupt(1, "empty file");
  if (lines[0] != "MDFIDX 1") {
    if (lines[0].starts_with("MDFIDX ")) {
      throw LineError(ErrorCode::FormatVersionMismatch, 1,
                      "unsupported index version '" + std::string(lines[0].substr(7)) + "'");
    }
    throw corrupt(1, "not an MDF index");
  }
  if (lines.size() < 2 || !lines[1].starts_with("entities ")) throw corrupt(2, "expected 'entities N'");
  auto count = parse_count(lines[1].substr(9));
  if (!count) throw corrupt(2, "bad entity count");
  if (lines.size() < 2 + *count) throw corrupt(lines.size() + 1, "entity table truncated");

  InvertedIndex index;
  for (std::size_t i = 0; i < *count; ++i) {
    std::string_view uri = lines[2 + i];
    if (uri.empty() || std::any_of(uri.begin(), uri.end(), detail::is_space)) {
      throw corrupt(3 + i, "bad entity URI");
    }
    if (!index.entity_table.empty() && !(index.entity_table.back() < uri)) {
      throw corrupt(3 + i, "entity table not strictly sorted");
    }
    index.entity_table.emplace_back(uri);
  }
  std::optional<InvertedIndex::Key> previous;
  for (std::size_t i = 2 + *count; i < lines.size(); ++i) {
    std::size_t line_no = i + 1;
    std::string_view line = lines[i];
    auto sp1 = line.find(' ');
    auto sp2 = sp1 == std::string_view::npos ? sp1 : line.find(' ', sp1 + 1);
    if (sp2 == std::string_view::npos || line.find(' ', sp2 + 1) != std::string_view::npos) {
      throw corrupt(line_no, "expected 'field term ordinals'");
    }
    auto field = key_field_from_name(line.substr(0, sp1));
    std::string_view term = line.substr(sp1 + 1, sp2 - sp1 - 1);
    if (!field) throw corrupt(line_no, "unknown field");
    if (!is_term(term)) throw corrupt(line_no, "bad term");
    InvertedIndex::Key key{*field, std::string(term)};
    if (previous && !(*previous < key)) throw corrupt(line_no, "postings not strictly sorted");
    std::set<std::string> uris;
    std::optional<std::size_t> last;
    std::string_view ords = line.substr(sp2 + 1);
    std::size_t pos = 0;
    while (true) {
      auto comma = ords.find(',', pos);
      auto ord = parse_count(ords.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
      if (!ord || *ord >= *count || (last && *ord <= *last)) {
        throw corrupt(line_no, "bad ordinal list");
      }
      uris.insert(index.entity_table[*ord]);
      last = ord;
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    index.postings.emplace(key, std::move(uris));
    previous = std::move(key);
  }
  return index;
}

void write_index(const InvertedIndex& index, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << format_index(index);
  if (!out.flush()) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

InvertedIndex read_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_index(buf.str());
}

std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& root) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  if (!std::filesystem::is_directory(root, ec)) {
    throw Error(ErrorCode::IoError, "not a directory: " + root.string());
  }
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".mdf") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

CorpusIndex index_corpus(const std::filesystem::path& root, const Schemas& schemas,
                         unsigned threads) {
  CorpusIndex out;
  std::vector<KeyDescriptorRecord> records;
  for (const auto& file : corpus_files(root)) {
    const std::string name = file.string();
    MdfDocument doc;
    try {
      doc = parse_mdf(read_text_file(file));
    } catch (const ParseError& e) {
      out.warnings.push_back(name + ":" + std::to_string(e.line()) + ":" +
                             std::to_string(e.column()) + ": " + e.what() + "; skipped");
      continue;
    } catch (const Error& e) {
      out.warnings.push_back(name + ": " + e.what() + "; skipped");
      continue;
    }
    ViewpointBinding binding = schemas.bind(doc);
    ValidationReport report = validate(doc, binding);
    if (!report.ok()) {
      out.warnings.push_back(name + ": " + std::to_string(report.count(Severity::Error)) +
                             " validation error(s); skipped");
      continue;
    }
    Extraction ex = extract_key_descriptors(doc, binding);
    for (auto& w : ex.warnings) out.warnings.push_back(name + ": " + w);
    std::move(ex.records.begin(), ex.records.end(), std::back_inserter(records));
    ++out.files_indexed;
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  out.index = build_index_parallel(records, threads);
  return out;
}

}  // namespace mdf
