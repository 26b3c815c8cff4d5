#include "mdf/lexer.hpp"

#include <algorithm>

#include "mdf/error.hpp"
#include "text_util.hpp"

namespace mdf {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::TagOpen: return "TagOpen";
    case TokenKind::TagClose: return "TagClose";
    case TokenKind::PiOpen: return "PiOpen";
    case TokenKind::PiClose: return "PiClose";
    case TokenKind::Name: return "Name";
    case TokenKind::AttrName: return "AttrName";
    case TokenKind::Eq: return "Eq";
    case TokenKind::QuotedValue: return "QuotedValue";
    case TokenKind::Text: return "Text";
    case TokenKind::Comment: return "Comment";
    case TokenKind::BangOpen: return "BangOpen";
    case TokenKind::BracketOpen: return "BracketOpen";
    case TokenKind::BracketClose: return "BracketClose";
    case TokenKind::GT: return "GT";
    case TokenKind::ParenOpen: return "ParenOpen";
    case TokenKind::ParenClose: return "ParenClose";
    case TokenKind::Comma: return "Comma";
    case TokenKind::Star: return "Star";
  }
  return "?";
}

namespace {

bool is_name_start(char c) {
  return detail::is_alpha(c) || c == '_' || c == '#';
}

bool is_name_char(char c) {
  return detail::is_alnum(c) || c == '_' || c == ':' || c == '.' ||
         c == '-' || c == '#';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src), positions_(src) {}

  std::vector<Token> run() {
    while (pos_ < src_.size()) {
      if (in_tag_) {
        lex_tag();
      } else {
        lex_content();
      }
    }
    return std::move(tokens_);
  }

 private:
  bool starts_with(std::string_view s) const {
    return src_.substr(pos_).starts_with(s);
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void emit(TokenKind kind, std::string lexeme, std::size_t begin,
            std::size_t end) {
    auto [line, col] = positions_.at(begin);
    tokens_.push_back(Token{kind, std::move(lexeme), line, col, begin,
                            end - begin});
  }

  [[noreturn]] void fail(ErrorCode code, std::size_t at,
                         const std::string& what) const {
    auto [line, col] = positions_.at(at);
    throw ParseError(code, line, col, what);
  }

  [[noreturn]] void illegal(std::size_t at) const {
    std::string shown = at < src_.size() ? std::string(1, src_[at])
                                         : std::string("end of input");
    fail(ErrorCode::IllegalCharacter, at, "illegal character '" + shown + "'");
  }

  std::size_t scan_name(std::size_t from) const {
    std::size_t end = from;
    while (end < src_.size() && is_name_char(src_[end])) ++end;
    return end;
  }

  std::size_t skip_ws(std::size_t from) const {
    while (from < src_.size() && detail::is_space(src_[from])) ++from;
    return from;
  }

  void lex_comment() {
    std::size_t begin = pos_;
    std::size_t body = pos_ + 4;
    std::size_t search = body;
    while (true) {
      std::size_t dash = src_.find("--", search);
      if (dash == std::string_view::npos) {
        fail(ErrorCode::UnterminatedComment, begin, "unterminated comment");
      }
      // Accept "-->", "--!>" and "-- !>".
      std::size_t k = skip_ws(dash + 2);
      if (k < src_.size() && src_[k] == '!') ++k;
      if (k < src_.size() && src_[k] == '>') {
        emit(TokenKind::Comment, std::string(src_.substr(body, dash - body)),
             begin, k + 1);
        pos_ = k + 1;
        return;
      }
      search = dash + 1;
    }
  }

  void lex_content() {
    std::size_t begin = pos_;
    if (starts_with("<!--")) {
      lex_comment();
      return;
    }
    if (starts_with("<!")) {
      std::size_t end = pos_ + 2;
      while (end < src_.size() && detail::is_alpha(src_[end])) ++end;
      if (end == pos_ + 2) illegal(end);
      emit(TokenKind::BangOpen, std::string(src_.substr(pos_ + 2, end - pos_ - 2)),
           begin, end);
      pos_ = end;
      in_tag_ = true;
      return;
    }
    if (starts_with("<?")) {
      std::size_t name_begin = skip_ws(pos_ + 2);
      if (name_begin >= src_.size() || !is_name_start(src_[name_begin])) {
        illegal(name_begin);
      }
      std::size_t end = scan_name(name_begin);
      emit(TokenKind::PiOpen,
           std::string(src_.substr(name_begin, end - name_begin)), begin, end);
      pos_ = end;
      in_tag_ = true;
      return;
    }
    if (starts_with("</")) {
      std::size_t name_begin = skip_ws(pos_ + 2);
      if (name_begin >= src_.size() || !is_name_start(src_[name_begin])) {
        illegal(name_begin);
      }
      std::size_t name_end = scan_name(name_begin);
      std::size_t close = skip_ws(name_end);
      if (close >= src_.size() || src_[close] != '>') illegal(close);
      emit(TokenKind::TagClose,
           std::string(src_.substr(name_begin, name_end - name_begin)), begin,
           close + 1);
      pos_ = close + 1;
      return;
    }
    if (peek() == '<') {
      if (!is_name_start(peek(1))) illegal(pos_ + 1);
      emit(TokenKind::TagOpen, "<", begin, begin + 1);
      ++pos_;
      in_tag_ = true;
      return;
    }
    if (bracket_depth_ > 0 && peek() == ']') {
      emit(TokenKind::BracketClose, "]", begin, begin + 1);
      ++pos_;
      --bracket_depth_;
      in_tag_ = true;
      return;
    }
    std::size_t end = pos_;
    while (end < src_.size() && src_[end] != '<' &&
           !(bracket_depth_ > 0 && src_[end] == ']')) {
      ++end;
    }
    std::string_view run = src_.substr(pos_, end - pos_);
    if (!detail::is_blank(run)) {
      emit(TokenKind::Text, std::string(run), begin, end);
    }
    pos_ = end;
  }

  void lex_tag() {
    pos_ = skip_ws(pos_);
    if (pos_ >= src_.size()) return;
    std::size_t begin = pos_;
    char c = peek();
    auto single = [&](TokenKind kind) {
      emit(kind, std::string(1, c), begin, begin + 1);
      ++pos_;
    };
    switch (c) {
      case '>':
        single(TokenKind::GT);
        in_tag_ = false;
        return;
      case '=': single(TokenKind::Eq); return;
      case '(': single(TokenKind::ParenOpen); return;
      case ')': single(TokenKind::ParenClose); return;
      case ',': single(TokenKind::Comma); return;
      case '*': single(TokenKind::Star); return;
      case '[':
        single(TokenKind::BracketOpen);
        ++bracket_depth_;
        in_tag_ = false;
        return;
      case '?':
        if (peek(1) != '>') illegal(pos_);
        emit(TokenKind::PiClose, "?>", begin, begin + 2);
        pos_ += 2;
        in_tag_ = false;
        return;
      case '"':
      case '\'': {
        std::size_t close = src_.find(c, pos_ + 1);
        if (close == std::string_view::npos) {
          fail(ErrorCode::UnterminatedString, begin, "unterminated string");
        }
        emit(TokenKind::QuotedValue,
             std::string(src_.substr(pos_ + 1, close - pos_ - 1)), begin,
             close + 1);
        pos_ = close + 1;
        return;
      }
      default:
        break;
    }
    if (!is_name_start(c)) illegal(pos_);
    std::size_t end = scan_name(pos_);
    std::size_t after = skip_ws(end);
    bool attr = after < src_.size() && src_[after] == '=';
    emit(attr ? TokenKind::AttrName : TokenKind::Name,
         std::string(src_.substr(pos_, end - pos_)), begin, end);
    pos_ = end;
  }

  std::string_view src_;
  detail::PositionMap positions_;
  std::size_t pos_ = 0;
  bool in_tag_ = false;
  int bracket_depth_ = 0;
  std::vector<Token> tokens_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
  return Lexer(source).run();
}

}  // namespace mdf
