#include "mdf/catalog.hpp"

#include <fstream>
#include <sstream>

#include "mdf/error.hpp"
#include "mdf/uri.hpp"
#include "text_util.hpp"

namespace mdf {

const SchemeDecl* Catalog::scheme_for(std::string_view uri) const {
  auto entry = entries.find(uri);
  if (entry == entries.end()) return nullptr;
  auto scheme = schemes.find(entry->second);
  return scheme == schemes.end() ? nullptr : &scheme->second;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LineError(ErrorCode::IoError, 0, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

Catalog parse_catalog(std::string_view text, const std::filesystem::path& base_dir) {
  Catalog cat;
  std::size_t line_no = 0;
  std::istringstream lines{std::string(text)};
  std::vector<std::pair<std::size_t, std::string>> order;  // (line, uri)
  for (std::string raw; std::getline(lines, raw);) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto syntax = [&](const std::string& what) {
      return LineError(ErrorCode::CatalogSyntaxError, line_no,
                       what);
    };
    auto eq = line.rfind('=');
    if (eq == std::string_view::npos) throw syntax("expected 'URI = path' or 'alias SCHEME Written = Declared'");
    std::string_view lhs = detail::trim(line.substr(0, eq));
    std::string_view rhs = detail::trim(line.substr(eq + 1));
    auto lhs_words = words(lhs);
    if (!lhs_words.empty() && lhs_words.front() == "alias") {
      auto target = words(rhs);
      if (lhs_words.size() != 3 || target.size() != 1) {
        throw syntax("expected 'alias SCHEME Written = Declared'");
      }
      auto key = std::pair{lhs_words[1], lhs_words[2]};
      if (cat.aliases.contains(key)) throw syntax("duplicate alias " + key.first + " " + key.second);
      cat.aliases.emplace(std::move(key), target.front());
      continue;
    }
    if (lhs.empty() || rhs.empty()) throw syntax("expected 'URI = path'");
    if (!is_uri_reference(lhs)) throw syntax("invalid URI '" + std::string(lhs) + "'");
    std::filesystem::path path(rhs);
    if (path.is_relative()) path = base_dir / path;
    path = path.lexically_normal();
    if (!cat.entries.emplace(std::string(lhs), path).second) {
      throw syntax("duplicate entry for " + std::string(lhs));
    }
    order.emplace_back(line_no, std::string(lhs));
  }

  for (const auto& [line, uri] : order) {
    const std::filesystem::path& path = cat.entries.at(uri);
    if (cat.schemes.contains(path)) continue;
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
      throw LineError(ErrorCode::DanglingPath, line,
                      uri +
                          " maps to missing file " + path.string());
    }
    std::string source = read_file(path);
    try {
      cat.schemes.emplace(path, parse_dsd(source));
    } catch (const ParseError& e) {
      throw LineError(ErrorCode::BadDsd, line,
                      path.string() + ":" +
                          std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                          ": " + e.what());
    }
  }
  return cat;
}

Catalog load_catalog(const std::filesystem::path& path) {
  return parse_catalog(read_file(path), path.parent_path());
}

}  // namespace mdf
