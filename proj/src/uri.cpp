#include "mdf/uri.hpp"

#include <string_view>

#include "text_util.hpp"

namespace mdf {

namespace {

using detail::is_alnum;
using detail::is_alpha;

bool is_hex(char c) {
  return detail::is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

bool is_unreserved(char c) {
  return is_alnum(c) || c == '-' || c == '.' || c == '_' || c == '~';
}

bool is_sub_delim(char c) {
  return std::string_view("!$&'()*+,;=").find(c) != std::string_view::npos;
}

// Checks pchar / extra, with %XX escapes.
bool valid_chars(std::string_view s, std::string_view extra) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '%') {
      if (i + 2 >= s.size() || !is_hex(s[i + 1]) || !is_hex(s[i + 2])) {
        return false;
      }
      i += 2;
      continue;
    }
    if (is_unreserved(c) || is_sub_delim(c) || c == ':' || c == '@') continue;
    if (extra.find(c) != std::string_view::npos) continue;
    return false;
  }
  return true;
}

bool valid_scheme(std::string_view s) {
  if (s.empty() || !is_alpha(s.front())) return false;
  for (char c : s) {
    if (!is_alnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  return true;
}

}  // namespace

bool is_uri_reference(std::string_view text) {
  if (text.empty()) return false;
  std::string_view rest = text;
  if (auto hash = rest.find('#'); hash != std::string_view::npos) {
    if (!valid_chars(rest.substr(hash + 1), "/?")) return false;
    rest = rest.substr(0, hash);
  }
  if (auto q = rest.find('?'); q != std::string_view::npos) {
    if (!valid_chars(rest.substr(q + 1), "/?")) return false;
    rest = rest.substr(0, q);
  }
  auto colon = rest.find(':');
  auto slash = rest.find('/');
  if (colon != std::string_view::npos &&
      (slash == std::string_view::npos || colon < slash)) {
    if (!valid_scheme(rest.substr(0, colon))) return false;
    rest = rest.substr(colon + 1);
  }
  if (rest.starts_with("//")) {
    rest.remove_prefix(2);
    auto end = rest.find('/');
    std::string_view authority = rest.substr(0, end);
    if (!valid_chars(authority, "[]")) return false;
    rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end);
  }
  return valid_chars(rest, "/");
}

std::optional<std::string> uri_fragment(std::string_view uri) {
  auto hash = uri.find('#');
  if (hash == std::string_view::npos) return std::nullopt;
  return std::string(uri.substr(hash + 1));
}

}  // namespace mdf
