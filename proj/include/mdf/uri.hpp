#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace mdf {

/// RFC 3986 URI-reference syntax check (absolute or relative, optional
/// fragment). The empty string is rejected.
bool is_uri_reference(std::string_view text);

/// Text after the first '#', if any.
std::optional<std::string> uri_fragment(std::string_view uri);

}  // namespace mdf
