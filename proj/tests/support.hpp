// Shared fixtures and reference implementations for the test binaries.
#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mdf/document.hpp"
#include "mdf/index.hpp"
#include "mdf/query.hpp"
#include "mdf/registry.hpp"

#ifndef MDF_DATA_DIR
#error "MDF_DATA_DIR must point at the data/ directory"
#endif

namespace testing {

namespace fs = std::filesystem;

inline fs::path data_dir() { return fs::path(MDF_DATA_DIR); }
inline fs::path catalog_path() { return data_dir() / "catalog.txt"; }
inline fs::path corpus_dir() { return data_dir() / "corpus"; }
inline fs::path example_path(int n) {
  return data_dir() / "examples" / ("example" + std::to_string(n) + ".mdf");
}

inline std::string slurp(const fs::path& p) { return mdf::read_text_file(p); }

inline const mdf::Schemas& shipped_schemas() {
  static const mdf::Schemas schemas = mdf::load_schemas(catalog_path());
  return schemas;
}

inline mdf::MdfDocument example(int n) { return mdf::parse_mdf(slurp(example_path(n))); }

inline std::vector<fs::path> dsd_files() {
  std::vector<fs::path> out;
  for (const char* n : {"doc", "image", "video", "movie", "scene", "frame", "object"}) {
    out.push_back(data_dir() / "schemas" / (std::string(n) + ".dsd"));
  }
  return out;
}

/// Scratch directory removed on destruction.
struct TempDir {
  fs::path path;
  TempDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    path = fs::temp_directory_path() / ("mdf-test-" + std::to_string(rng()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  void write(const std::string& name, const std::string& text) const {
    fs::create_directories((path / name).parent_path());
    std::ofstream(path / name, std::ios::binary) << text;
  }
};

// ---------------------------------------------------------------------------
// Inheritance oracle. Reads the DSD text with regular expressions (no use of
// the library parser), then computes the closure by brute force: walk the
// ancestors depth-first left-to-right, and let the first scheme in that walk
// declaring a name own it.

struct NaiveScheme {
  std::vector<std::string> parents;
  std::vector<std::string> names;  // <!D> and <!DS NAME "uri"> declarations
};

inline std::map<std::string, NaiveScheme> naive_load(const std::vector<fs::path>& files) {
  std::map<std::string, NaiveScheme> out;
  static const std::regex head(R"(<!DSD\s+([A-Za-z_]\w*))");
  static const std::regex parent(R"re(Parent\s*=\s*"\s*([A-Za-z_]\w*)\s*;)re");
  static const std::regex plain(R"(<!D\s+([A-Za-z_]\w*)\s*\()");
  static const std::regex ref(R"re(<!DS\s+([A-Za-z_]\w*)\s+")re");
  for (const auto& f : files) {
    std::string text = slurp(f);
    std::smatch m;
    if (!std::regex_search(text, m, head)) continue;
    std::string name = m[1];
    std::size_t bracket = text.find('[', m.position(0));
    std::string header = text.substr(0, bracket);
    std::string body = text.substr(bracket);
    NaiveScheme s;
    for (std::sregex_iterator it(header.begin(), header.end(), parent), end; it != end; ++it) {
      s.parents.push_back((*it)[1]);
    }
    // Declarations in source order, both kinds interleaved.
    std::vector<std::pair<std::size_t, std::string>> found;
    for (std::sregex_iterator it(body.begin(), body.end(), plain), end; it != end; ++it) {
      found.emplace_back(it->position(0), (*it)[1]);
    }
    for (std::sregex_iterator it(body.begin(), body.end(), ref), end; it != end; ++it) {
      found.emplace_back(it->position(0), (*it)[1]);
    }
    std::sort(found.begin(), found.end());
    for (auto& [pos, n] : found) s.names.push_back(n);
    out[name] = s;
  }
  return out;
}

/// local name -> origin scheme, for `name`.
inline std::map<std::string, std::string> naive_closure(
    const std::map<std::string, NaiveScheme>& schemes, const std::string& name,
    const std::string& root = "DOC") {
  std::vector<std::string> order;
  std::vector<std::string> stack{name};
  while (!stack.empty()) {
    std::string cur = stack.back();
    stack.pop_back();
    if (std::find(order.begin(), order.end(), cur) != order.end()) continue;
    order.push_back(cur);
    std::vector<std::string> ps = schemes.at(cur).parents;
    if (ps.empty() && cur != root && schemes.count(root)) ps.push_back(root);
    for (auto it = ps.rbegin(); it != ps.rend(); ++it) stack.push_back(*it);
  }
  std::map<std::string, std::string> owner;
  for (const auto& s : order) {
    for (const auto& n : schemes.at(s).names) owner.emplace(n, s);
  }
  return owner;
}

// ---------------------------------------------------------------------------
// Search oracle: a linear scan over the raw records.

inline std::vector<std::string> naive_terms(const std::string& raw) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : raw) {
    if (c < 128 && std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline bool naive_has(const std::vector<mdf::KeyDescriptorRecord>& records,
                      const std::string& entity, mdf::KeyField field, const std::string& term) {
  for (const auto& r : records) {
    if (r.entity != entity || r.field != field) continue;
    auto terms = naive_terms(r.raw_value);
    if (std::find(terms.begin(), terms.end(), term) != terms.end()) return true;
  }
  return false;
}

inline std::vector<std::string> naive_search(const std::vector<mdf::KeyDescriptorRecord>& records,
                                             const mdf::Query& q) {
  std::set<std::string> entities;
  for (const auto& r : records) entities.insert(r.entity);
  std::vector<std::string> out;
  for (const auto& e : entities) {
    bool all = true;
    for (const auto& c : q.clauses) {
      for (const auto& t : c.terms) all = all && naive_has(records, e, c.field, t);
    }
    if (all) out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random corpora written in the MDF surface syntax.

inline const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> words = {
      "ultra", "steel", "bridge", "video", "scene", "frame", "nhk", "mpeg", "1",
      "akashi", "cable", "tower", "sea", "air", "shot", "movie", "doc", "2000",
      "construction", "world"};
  return words;
}

struct RandomCorpus {
  std::vector<std::string> files;  // MDF sources
};

inline std::string random_value(std::mt19937& rng) {
  static const char* seps[] = {" ", "-", ", ", "/", "  ", "_"};
  const auto& v = vocabulary();
  int n = std::uniform_int_distribution<int>(1, 4)(rng);
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (i) out += seps[rng() % 6];
    std::string w = v[rng() % v.size()];
    if (rng() % 3 == 0) {
      for (auto& c : w) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    } else if (rng() % 3 == 0 && !w.empty()) {
      w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    }
    out += w;
  }
  return out;
}

/// Up to `max_desc` descriptions spread over a few files, written under the
/// DOC and VIDEO viewpoints with both declared and alias property names.
inline RandomCorpus random_corpus(std::mt19937& rng, int max_desc = 50) {
  static const char* doc_props[] = {"Title",  "Subject", "Subj",        "Author", "Pub",
                                    "Publisher", "Format", "Res",      "Type",   "Content",
                                    "Description", "Identifier"};
  RandomCorpus c;
  int total = std::uniform_int_distribution<int>(0, max_desc)(rng);
  int files = std::uniform_int_distribution<int>(1, 5)(rng);
  std::vector<std::string> bodies(files);
  for (int i = 0; i < total; ++i) {
    bool video = rng() % 3 == 0;
    std::string vp = video ? "VIDEO" : "DOC";
    std::string about = "http://example.org/e" + std::to_string(rng() % 30);
    if (rng() % 4 == 0) about += "#part" + std::to_string(rng() % 3);
    std::string d = "  <MDF:Description About=\"" + about + "\">\n";
    int props = std::uniform_int_distribution<int>(0, 6)(rng);
    std::set<std::string> used;
    for (int p = 0; p < props; ++p) {
      std::string name = doc_props[rng() % 12];
      if (!used.insert(name).second) continue;
      // Alias and declared spellings of the same descriptor may not both appear.
      static const std::map<std::string, std::string> twin = {
          {"Subject", "Subj"}, {"Subj", "Subject"}, {"Pub", "Publisher"},
          {"Publisher", "Pub"}, {"Res", "Type"},    {"Type", "Res"},
          {"Content", "Description"}, {"Description", "Content"}};
      if (auto t = twin.find(name); t != twin.end() && used.count(t->second)) continue;
      std::string value = name == "Identifier" ? about : random_value(rng);
      d += "    <" + vp + ":" + name + ">" + value + "</" + vp + ":" + name + ">\n";
    }
    if (video && rng() % 2) d += "    <VIDEO:Rate>30</VIDEO:Rate>\n";
    d += "  </MDF:Description>\n";
    bodies[rng() % files] += d;
  }
  for (const auto& body : bodies) {
    c.files.push_back(
        "<MDF:MDF SYNTAX=\"http://155.69.66.134:8000/MDL/\">\n"
        "<?MDF VP:DOC href=\"http://155.69.66.134:8000/DOC\" ?>\n"
        "<?MDF VP:VIDEO href=\"http://155.69.66.134:8000/VIDEO\" ?>\n" +
        body + "</MDF:MDF>\n");
  }
  return c;
}

inline std::string random_query_text(std::mt19937& rng) {
  static const char* fields[] = {"title", "subject", "description", "author",
                                 "publisher", "format", "type"};
  const auto& v = vocabulary();
  int clauses = std::uniform_int_distribution<int>(1, 3)(rng);
  std::string q;
  for (int i = 0; i < clauses; ++i) {
    if (i) q += ' ';
    q += fields[rng() % 7];
    q += '=';
    int terms = std::uniform_int_distribution<int>(1, 2)(rng);
    std::string value;
    for (int t = 0; t < terms; ++t) {
      if (t) value += ' ';
      value += rng() % 10 == 0 ? std::string("absentterm") : v[rng() % v.size()];
    }
    q += terms > 1 ? "\"" + value + "\"" : value;
  }
  return q;
}

}  // namespace testing
