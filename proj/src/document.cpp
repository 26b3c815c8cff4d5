#include "mdf/document.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "mdf/error.hpp"
#include "mdf/lexer.hpp"
#include "mdf/uri.hpp"
#include "text_util.hpp"

namespace mdf {

const VpDecl* MdfDocument::find_viewpoint(std::string_view name) const {
  auto it = std::find_if(viewpoints.begin(), viewpoints.end(),
                         [&](const VpDecl& vp) { return vp.name == name; });
  return it == viewpoints.end() ? nullptr : &*it;
}

namespace {

constexpr std::string_view kRootTag = "MDF:MDF";
constexpr std::string_view kDescriptionTag = "MDF:Description";
constexpr std::string_view kElision = "...";

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::TagOpen: return "'<'";
    case TokenKind::TagClose: return "'</" + t.lexeme + ">'";
    case TokenKind::PiOpen: return "'<?" + t.lexeme + "'";
    case TokenKind::Text: return "text '" + detail::collapse_ws(t.lexeme) + "'";
    case TokenKind::Comment: return "comment";
    case TokenKind::QuotedValue: return "\"" + t.lexeme + "\"";
    default: return std::string(to_string(t.kind)) + " '" + t.lexeme + "'";
  }
}

class MdfParser {
 public:
  explicit MdfParser(std::string_view source)
      : tokens_(tokenize(source)), eof_(detail::PositionMap(source).at(source.size())) {}

  MdfDocument parse() {
    MdfDocument doc;
    skip_comments(doc.comments, 0);
    bool wrapped = false;
    if (at(TokenKind::TagOpen) && next_is_name(kRootTag)) {
      parse_root_open(doc);
      wrapped = true;
    }
    std::unordered_set<std::string> seen;
    while (true) {
      skip_comments(doc.comments, 0);
      if (!at(TokenKind::PiOpen)) break;
      VpDecl vp = parse_vp_decl(seen);
      doc.viewpoints.push_back(std::move(vp));
    }
    if (doc.viewpoints.empty()) {
      auto [line, col] = here();
      throw ParseError(ErrorCode::MissingViewpointDecl, line, col,
                       "missing viewpoint declaration '<?MDF VP:name href=\"...\" ?>'");
    }
    while (true) {
      skip_comments(doc.comments, doc.descriptions.size());
      if (done()) {
        if (wrapped) syntax_error("'</MDF:MDF>'");
        break;
      }
      const Token& t = peek();
      if (t.kind == TokenKind::TagOpen && next_is_name(kDescriptionTag)) {
        doc.descriptions.push_back(parse_description());
        continue;
      }
      if (t.kind == TokenKind::Text && detail::trim(t.lexeme) == kElision) {
        ++pos_;
        continue;
      }
      if (t.kind == TokenKind::TagClose && wrapped) {
        if (t.lexeme != kRootTag) mismatched(t, kRootTag);
        ++pos_;
        skip_comments(doc.comments, doc.descriptions.size());
        if (!done()) syntax_error("end of input");
        break;
      }
      if (t.kind == TokenKind::PiOpen) {
        syntax_error("'<MDF:Description' (viewpoint declarations must come first)");
      }
      syntax_error(wrapped ? "'<MDF:Description' or '</MDF:MDF>'"
                           : "'<MDF:Description'");
    }
    return doc;
  }

 private:
  struct Content {
    std::vector<PropertyNode> elements;
    std::vector<Annotation> comments;
    std::vector<const Token*> text;
  };

  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }
  bool at(TokenKind kind) const { return !done() && peek().kind == kind; }

  bool next_is_name(std::string_view name) const {
    return pos_ + 1 < tokens_.size() && tokens_[pos_ + 1].kind == TokenKind::Name &&
           tokens_[pos_ + 1].lexeme == name;
  }

  std::pair<std::size_t, std::size_t> here() const {
    if (done()) return eof_;
    return {peek().line, peek().column};
  }

  [[noreturn]] void syntax_error(std::string_view expected) const {
    auto [line, col] = here();
    std::string found = done() ? "end of input" : describe(peek());
    throw ParseError(ErrorCode::SyntaxError, line, col,
                     "expected " + std::string(expected) + ", found " + found);
  }

  [[noreturn]] void error_at(const Token& t, ErrorCode code,
                             const std::string& message) const {
    throw ParseError(code, t.line, t.column, message);
  }

  [[noreturn]] void mismatched(const Token& t, std::string_view open) const {
    error_at(t, ErrorCode::MismatchedTag,
             "expected '</" + std::string(open) + ">', found '</" + t.lexeme + ">'");
  }

  const Token& expect(TokenKind kind, std::string_view what) {
    if (!at(kind)) syntax_error(what);
    return tokens_[pos_++];
  }

  void skip_comments(std::vector<Annotation>& sink, std::size_t before) {
    while (at(TokenKind::Comment)) {
      sink.push_back({before, peek().lexeme});
      ++pos_;
    }
  }

  std::string uri_value(const Token& value) const {
    std::string uri(detail::trim(value.lexeme));
    if (!is_uri_reference(uri)) {
      error_at(value, ErrorCode::SyntaxError,
               "invalid URI reference \"" + uri + "\"");
    }
    return uri;
  }

  void parse_root_open(MdfDocument& doc) {
    pos_ += 2;  // '<' MDF:MDF
    while (at(TokenKind::AttrName)) {
      const Token& attr = peek();
      if (attr.lexeme != "SYNTAX" && attr.lexeme != "href") {
        error_at(attr, ErrorCode::SyntaxError,
                 "unknown attribute '" + attr.lexeme + "' on <MDF:MDF>");
      }
      if (doc.syntax_uri) {
        error_at(attr, ErrorCode::SyntaxError, "syntax URI given twice");
      }
      ++pos_;
      expect(TokenKind::Eq, "'='");
      doc.syntax_uri = uri_value(expect(TokenKind::QuotedValue, "quoted URI"));
    }
    expect(TokenKind::GT, "'>'");
  }

  VpDecl parse_vp_decl(std::unordered_set<std::string>& seen) {
    const Token& open = peek();
    if (open.lexeme != "MDF") {
      error_at(open, ErrorCode::SyntaxError,
               "expected '<?MDF', found '<?" + open.lexeme + "'");
    }
    ++pos_;
    const Token& name = expect(TokenKind::Name, "viewpoint name 'VP:NAME'");
    std::string_view vp = name.lexeme;
    if (!vp.starts_with("VP:") || !detail::is_qname_part(vp.substr(3))) {
      error_at(name, ErrorCode::SyntaxError,
               "invalid viewpoint name '" + name.lexeme + "'");
    }
    VpDecl decl{std::string(vp.substr(3)), {}};
    if (!seen.insert(decl.name).second) {
      error_at(name, ErrorCode::DuplicateViewpointName,
               "viewpoint '" + decl.name + "' declared twice");
    }
    const Token& href = expect(TokenKind::AttrName, "'href='");
    if (href.lexeme != "href") {
      error_at(href, ErrorCode::SyntaxError,
               "expected 'href', found '" + href.lexeme + "'");
    }
    expect(TokenKind::Eq, "'='");
    decl.href = uri_value(expect(TokenKind::QuotedValue, "quoted URI"));
    expect(TokenKind::PiClose, "'?>'");
    return decl;
  }

  Description parse_description() {
    pos_ += 2;  // '<' MDF:Description
    Description d;
    if (at(TokenKind::AttrName)) {
      const Token& attr = peek();
      if (attr.lexeme != "About") {
        error_at(attr, ErrorCode::SyntaxError,
                 "unknown attribute '" + attr.lexeme + "' on <MDF:Description>");
      }
      ++pos_;
      expect(TokenKind::Eq, "'='");
      d.about = uri_value(expect(TokenKind::QuotedValue, "quoted URI"));
    }
    expect(TokenKind::GT, "'>'");
    Content c = parse_content(kDescriptionTag);
    for (const Token* t : c.text) {
      if (detail::trim(t->lexeme) != kElision) {
        error_at(*t, ErrorCode::SyntaxError,
                 "expected property element, found " + describe(*t));
      }
    }
    d.properties = std::move(c.elements);
    d.comments = std::move(c.comments);
    return d;
  }

  PropertyNode parse_property() {
    ++pos_;  // '<'
    const Token& name = expect(TokenKind::Name, "property name");
    std::string_view qname = name.lexeme;
    auto colon = qname.find(':');
    if (colon == std::string_view::npos || qname.find(':', colon + 1) != std::string_view::npos ||
        !detail::is_qname_part(qname.substr(0, colon)) ||
        !detail::is_qname_part(qname.substr(colon + 1))) {
      error_at(name, ErrorCode::SyntaxError,
               "invalid property name '" + name.lexeme + "' (expected PREFIX:Name)");
    }
    if (qname.substr(0, colon) == "MDF") {
      error_at(name, ErrorCode::SyntaxError,
               "'" + name.lexeme + "' is not allowed inside a description");
    }
    if (at(TokenKind::AttrName)) {
      error_at(peek(), ErrorCode::SyntaxError, "property elements take no attributes");
    }
    expect(TokenKind::GT, "'>'");
    PropertyNode node;
    node.prefix = std::string(qname.substr(0, colon));
    node.local = std::string(qname.substr(colon + 1));
    Content c = parse_content(qname);
    node.comments = std::move(c.comments);
    if (!c.elements.empty()) {
      for (const Token* t : c.text) {
        if (detail::trim(t->lexeme) != kElision) {
          error_at(*t, ErrorCode::SyntaxError,
                   "mixed text and element content in '" + node.qname() + "'");
        }
      }
      node.value = std::move(c.elements);
    } else {
      std::string text;
      for (const Token* t : c.text) text += t->lexeme;
      node.value = std::string(detail::trim(text));
    }
    return node;
  }

  Content parse_content(std::string_view open_name) {
    Content c;
    while (true) {
      if (done()) syntax_error("'</" + std::string(open_name) + ">'");
      const Token& t = peek();
      switch (t.kind) {
        case TokenKind::Comment:
          c.comments.push_back({c.elements.size(), t.lexeme});
          ++pos_;
          break;
        case TokenKind::Text:
          c.text.push_back(&t);
          ++pos_;
          break;
        case TokenKind::TagOpen:
          c.elements.push_back(parse_property());
          break;
        case TokenKind::TagClose:
          if (t.lexeme != open_name) mismatched(t, open_name);
          ++pos_;
          return c;
        default:
          syntax_error("content or '</" + std::string(open_name) + ">'");
      }
    }
  }

  std::vector<Token> tokens_;
  std::pair<std::size_t, std::size_t> eof_;
  std::size_t pos_ = 0;
};

// Serialization ----------------------------------------------------------

std::string quote_attr(std::string_view value) {
  char q = value.find('"') == std::string_view::npos ? '"' : '\'';
  return std::string(1, q) + std::string(value) + q;
}

void emit_comments(std::string& out, const std::vector<Annotation>& comments,
                   std::size_t before, const std::string& indent) {
  for (const Annotation& a : comments) {
    if (a.before == before) out += indent + "<!--" + a.text + "-->\n";
  }
}

void emit_property(std::string& out, const PropertyNode& node, int depth) {
  std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  std::string tag = node.qname();
  if (node.is_text()) {
    out += indent + "<" + tag + ">";
    for (const Annotation& a : node.comments) out += "<!--" + a.text + "-->";
    out += node.text() + "</" + tag + ">\n";
    return;
  }
  out += indent + "<" + tag + ">\n";
  const auto& kids = node.children();
  std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
  for (std::size_t i = 0; i < kids.size(); ++i) {
    emit_comments(out, node.comments, i, inner);
    emit_property(out, kids[i], depth + 1);
  }
  emit_comments(out, node.comments, kids.size(), inner);
  out += indent + "</" + tag + ">\n";
}

void tree_property(std::string& out, const PropertyNode& node, int depth) {
  out += std::string(static_cast<std::size_t>(depth) * 2, ' ') + node.qname();
  if (node.is_text()) {
    std::string value = detail::collapse_ws(node.text());
    out += value.empty() ? " =" : " = " + value;
    out += '\n';
    return;
  }
  out += '\n';
  for (const PropertyNode& kid : node.children()) tree_property(out, kid, depth + 1);
}

}  // namespace

MdfDocument parse_mdf(std::string_view source) {
  return MdfParser(source).parse();
}

std::string serialize(const MdfDocument& doc) {
  std::string out = "<MDF:MDF";
  if (doc.syntax_uri) out += " SYNTAX=" + quote_attr(*doc.syntax_uri);
  out += ">\n";
  for (const VpDecl& vp : doc.viewpoints) {
    out += "<?MDF VP:" + vp.name + " href=" + quote_attr(vp.href) + " ?>\n";
  }
  for (std::size_t i = 0; i < doc.descriptions.size(); ++i) {
    emit_comments(out, doc.comments, i, "  ");
    const Description& d = doc.descriptions[i];
    out += "  <MDF:Description";
    if (d.about) out += " About=" + quote_attr(*d.about);
    out += ">\n";
    for (std::size_t p = 0; p < d.properties.size(); ++p) {
      emit_comments(out, d.comments, p, "    ");
      emit_property(out, d.properties[p], 2);
    }
    emit_comments(out, d.comments, d.properties.size(), "    ");
    out += "  </MDF:Description>\n";
  }
  emit_comments(out, doc.comments, doc.descriptions.size(), "  ");
  out += "</MDF:MDF>\n";
  return out;
}

std::string dom_tree(const MdfDocument& doc) {
  std::string out = "MDF\n";
  for (const Description& d : doc.descriptions) {
    out += "  Description";
    if (d.about) out += "(" + *d.about + ")";
    out += '\n';
    for (const PropertyNode& p : d.properties) tree_property(out, p, 2);
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace mdf
