#include "mdf/scheme.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "mdf/error.hpp"
#include "mdf/lexer.hpp"
#include "mdf/uri.hpp"
#include "text_util.hpp"

namespace mdf {

namespace {

struct KindName {
  ValueKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 9> kKindNames{{
    {ValueKind::PCDATA, "PCDATA"},
    {ValueKind::DATE, "DATE"},
    {ValueKind::TIME, "TIME"},
    {ValueKind::FLOAT, "FLOAT"},
    {ValueKind::URI, "URI"},
    {ValueKind::ARRAY, "ARRAY"},
    {ValueKind::COMPOSITE, "COMPOSITE"},
    {ValueKind::BLOB, "BLOB"},
    {ValueKind::SCHEME_REF, "SCHEME_REF"},
}};

}  // namespace

std::string_view to_string(ValueKind kind) {
  for (const auto& kn : kKindNames) {
    if (kn.kind == kind) return kn.name;
  }
  return "?";
}

std::optional<ValueKind> value_kind_from_tag(std::string_view tag) {
  for (const auto& kn : kKindNames) {
    if (kn.kind != ValueKind::SCHEME_REF && kn.name == tag) return kn.kind;
  }
  return std::nullopt;
}

std::vector<DescriptorDecl> SchemeDecl::descriptors() const {
  std::vector<DescriptorDecl> out;
  std::copy_if(declarations.begin(), declarations.end(), std::back_inserter(out),
               [](const DescriptorDecl& d) {
                 return d.value_type.kind != ValueKind::SCHEME_REF;
               });
  return out;
}

std::vector<DsRef> SchemeDecl::ds_refs() const {
  std::vector<DsRef> out;
  for (const DescriptorDecl& d : declarations) {
    if (d.value_type.kind == ValueKind::SCHEME_REF) {
      out.push_back({d.local, d.value_type.scheme_uri});
    }
  }
  return out;
}

const DescriptorDecl* SchemeDecl::find(std::string_view local) const {
  auto it = std::find_if(declarations.begin(), declarations.end(),
                         [&](const DescriptorDecl& d) { return d.local == local; });
  return it == declarations.end() ? nullptr : &*it;
}

namespace {

// Content-model item that a declaration belongs to: its own name, or the
// `Camera` in `Camera_Distance` when `Camera` itself is not declared.
const ContentItem* owning_item(const SchemeDecl& decl, std::string_view local) {
  for (const ContentItem& item : decl.content_model) {
    if (item.name == local) return &item;
  }
  for (const ContentItem& item : decl.content_model) {
    if (decl.find(item.name) == nullptr && local.size() > item.name.size() + 1 &&
        local.starts_with(item.name) && local[item.name.size()] == '_') {
      return &item;
    }
  }
  return nullptr;
}

class DsdParser {
 public:
  explicit DsdParser(std::string_view source)
      : tokens_(tokenize(source)), eof_(detail::PositionMap(source).at(source.size())) {}

  SchemeDecl parse() {
    SchemeDecl decl;
    skip_comments();
    if (at(TokenKind::PiOpen)) parse_mdl_pi();
    skip_comments();
    const Token& open = expect(TokenKind::BangOpen, "'<!DSD'");
    if (open.lexeme != "DSD") error_at(open, "expected '<!DSD', found '<!" + open.lexeme + "'");
    const Token& name = expect(TokenKind::Name, "scheme name");
    if (!detail::is_qname_part(name.lexeme)) error_at(name, "invalid scheme name '" + name.lexeme + "'");
    decl.name = name.lexeme;
    while (at(TokenKind::AttrName)) parse_dsd_attribute(decl);
    expect(TokenKind::BracketOpen, "'['");
    bool have_model = false;
    while (true) {
      skip_comments();
      if (at(TokenKind::BracketClose)) break;
      const Token& bang = expect(TokenKind::BangOpen, "declaration or ']'");
      if (bang.lexeme == "DS") {
        parse_ds(decl, have_model);
      } else if (bang.lexeme == "D") {
        parse_d(decl);
      } else if (bang.lexeme == "ATTLIST") {
        parse_attlist(decl);
      } else {
        error_at(bang, "unknown declaration '<!" + bang.lexeme + "'");
      }
    }
    ++pos_;
    expect(TokenKind::GT, "'>'");
    skip_comments();
    if (!done()) syntax_error("end of input");

    for (DescriptorDecl& d : decl.declarations) {
      if (const ContentItem* item = owning_item(decl, d.local)) {
        d.multiplicity = item->multiplicity;
      }
      d.qualified_id = decl.name + ":" + d.local;
    }
    return decl;
  }

 private:
  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }
  bool at(TokenKind kind) const { return !done() && peek().kind == kind; }

  void skip_comments() {
    while (at(TokenKind::Comment)) ++pos_;
  }

  [[noreturn]] void syntax_error(std::string_view expected) const {
    auto [line, col] = done() ? eof_ : std::pair{peek().line, peek().column};
    std::string found = done() ? "end of input"
                               : std::string(to_string(peek().kind)) + " '" + peek().lexeme + "'";
    throw ParseError(ErrorCode::SyntaxError, line, col,
                     "expected " + std::string(expected) + ", found " + found);
  }

  [[noreturn]] void error_at(const Token& t, const std::string& message,
                             ErrorCode code = ErrorCode::SyntaxError) const {
    throw ParseError(code, t.line, t.column, message);
  }

  const Token& expect(TokenKind kind, std::string_view what) {
    if (!at(kind)) syntax_error(what);
    return tokens_[pos_++];
  }

  void parse_mdl_pi() {
    const Token& pi = peek();
    if (pi.lexeme != "MDL") error_at(pi, "expected '<?MDL', found '<?" + pi.lexeme + "'");
    ++pos_;
    while (at(TokenKind::AttrName)) {
      ++pos_;
      expect(TokenKind::Eq, "'='");
      expect(TokenKind::QuotedValue, "quoted value");
    }
    expect(TokenKind::PiClose, "'?>'");
  }

  void parse_dsd_attribute(SchemeDecl& decl) {
    const Token& attr = tokens_[pos_++];
    expect(TokenKind::Eq, "'='");
    const Token& value = expect(TokenKind::QuotedValue, "quoted value");
    if (attr.lexeme == "Parent") {
      std::string_view text = value.lexeme;
      auto semi = text.find(';');
      if (semi == std::string_view::npos) {
        error_at(value, "Parent must read \"NAME; URI\"");
      }
      ParentRef ref{std::string(detail::trim(text.substr(0, semi))),
                    std::string(detail::trim(text.substr(semi + 1)))};
      if (!detail::is_qname_part(ref.name)) error_at(value, "invalid parent name '" + ref.name + "'");
      if (!is_uri_reference(ref.uri)) error_at(value, "invalid parent URI '" + ref.uri + "'");
      decl.parents.push_back(std::move(ref));
    } else if (attr.lexeme == "Children") {
      std::string text = value.lexeme;
      std::replace_if(text.begin(), text.end(),
                      [](char c) { return c == ',' || c == ';'; }, ' ');
      std::istringstream words(text);
      for (std::string w; words >> w;) decl.children.push_back(w);
    } else {
      error_at(attr, "unknown DSD attribute '" + attr.lexeme + "'");
    }
  }

  void add_declaration(SchemeDecl& decl, const Token& name, DescriptorDecl d) {
    if (decl.find(d.local) != nullptr) {
      error_at(name, "descriptor '" + d.local + "' declared twice in " + decl.name,
               ErrorCode::DuplicateDescriptor);
    }
    decl.declarations.push_back(std::move(d));
  }

  const Token& descriptor_name() {
    const Token& name = expect(TokenKind::Name, "descriptor name");
    if (!detail::is_qname_part(name.lexeme)) {
      error_at(name, "invalid descriptor name '" + name.lexeme + "'");
    }
    return name;
  }

  void parse_ds(SchemeDecl& decl, bool& have_model) {
    const Token& name = descriptor_name();
    if (at(TokenKind::QuotedValue)) {
      const Token& uri = tokens_[pos_++];
      std::string ref(detail::trim(uri.lexeme));
      if (!is_uri_reference(ref)) error_at(uri, "invalid scheme URI '" + ref + "'");
      expect(TokenKind::GT, "'>'");
      DescriptorDecl d;
      d.local = name.lexeme;
      d.value_type = {ValueKind::SCHEME_REF, ref};
      add_declaration(decl, name, std::move(d));
      return;
    }
    const Token& paren = expect(TokenKind::ParenOpen, "'(' or quoted scheme URI");
    if (have_model) error_at(paren, "second content model in " + decl.name);
    have_model = true;
    while (true) {
      const Token& item = expect(TokenKind::Name, "content-model name");
      ContentItem ci{item.lexeme, Multiplicity::One};
      if (at(TokenKind::Star)) {
        ++pos_;
        ci.multiplicity = Multiplicity::Many;
      }
      decl.content_model.push_back(std::move(ci));
      if (at(TokenKind::Comma)) {
        ++pos_;
        continue;
      }
      break;
    }
    expect(TokenKind::ParenClose, "',' or ')'");
    expect(TokenKind::GT, "'>'");
  }

  void parse_d(SchemeDecl& decl) {
    const Token& name = descriptor_name();
    expect(TokenKind::ParenOpen, "'('");
    const Token& type = expect(TokenKind::Name, "value type such as #PCDATA");
    std::string_view tag = type.lexeme;
    std::optional<ValueKind> kind;
    if (tag.starts_with('#')) kind = value_kind_from_tag(tag.substr(1));
    if (!kind) {
      error_at(type, "unknown value type '" + type.lexeme + "'", ErrorCode::UnknownValueType);
    }
    expect(TokenKind::ParenClose, "')'");
    expect(TokenKind::GT, "'>'");
    DescriptorDecl d;
    d.local = name.lexeme;
    d.value_type = {*kind, {}};
    add_declaration(decl, name, std::move(d));
  }

  void parse_attlist(SchemeDecl& decl) {
    if (at(TokenKind::Name)) ++pos_;  // element name; optional in the IMAGE DSD
    const Token& body = expect(TokenKind::QuotedValue, "quoted attribute declarations");
    std::istringstream words(body.lexeme);
    std::vector<std::string> w;
    for (std::string s; words >> s;) w.push_back(s);
    if (w.empty() || w.size() % 3 != 0) {
      error_at(body, "attribute declarations must read \"name TYPE #DEFAULT\"");
    }
    for (std::size_t i = 0; i < w.size(); i += 3) {
      if (w[i + 2] != "#REQUIRED" && w[i + 2] != "#IMPLIED") {
        error_at(body, "unknown attribute default '" + w[i + 2] + "'");
      }
      decl.attlist.push_back({w[i], w[i + 1], w[i + 2] == "#REQUIRED"});
    }
    expect(TokenKind::GT, "'>'");
  }

  std::vector<Token> tokens_;
  std::pair<std::size_t, std::size_t> eof_;
  std::size_t pos_ = 0;
};

}  // namespace

SchemeDecl parse_dsd(std::string_view source) {
  return DsdParser(source).parse();
}

std::vector<std::string> undeclared_content_names(const SchemeDecl& decl) {
  std::vector<std::string> out;
  for (const ContentItem& item : decl.content_model) {
    bool covered = decl.find(item.name) != nullptr ||
                   std::any_of(decl.declarations.begin(), decl.declarations.end(),
                               [&](const DescriptorDecl& d) {
                                 return owning_item(decl, d.local) == &item;
                               });
    if (!covered) out.push_back(item.name);
  }
  return out;
}

}  // namespace mdf
