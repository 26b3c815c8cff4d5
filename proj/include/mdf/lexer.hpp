#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mdf {

enum class TokenKind {
  TagOpen,       // "<" starting an element
  TagClose,      // "</name>", lexeme is the name
  PiOpen,        // "<?target", lexeme is the target (MDF, MDL)
  PiClose,       // "?>"
  Name,
  AttrName,      // a name followed by "="
  Eq,
  QuotedValue,   // lexeme excludes the quotes
  Text,          // raw character data, not trimmed
  Comment,       // lexeme is the comment body
  BangOpen,      // "<!DSD", "<!DS", "<!D", "<!ATTLIST"; lexeme is the keyword
  BracketOpen,
  BracketClose,
  GT,
  ParenOpen,
  ParenClose,
  Comma,
  Star,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string lexeme;
  std::size_t line = 1;
  std::size_t column = 1;
  // Byte span of the whole token in the source, delimiters included.
  std::size_t offset = 0;
  std::size_t length = 0;

  bool operator==(const Token&) const = default;
};

/// Splits MDF/DSD source into tokens. Whitespace between tokens and
/// whitespace-only character data are not emitted; comments are.
/// Throws ParseError (UnterminatedString, UnterminatedComment,
/// IllegalCharacter).
std::vector<Token> tokenize(std::string_view source);

}  // namespace mdf
