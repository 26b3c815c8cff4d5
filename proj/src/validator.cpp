#include "mdf/validator.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <regex>

#include "mdf/error.hpp"
#include "mdf/timecode.hpp"
#include "mdf/uri.hpp"
#include "text_util.hpp"

namespace mdf {

std::string_view to_string(Severity severity) {
  return severity == Severity::Error ? "Error" : "Warning";
}

std::string_view to_string(FindingCode code) {
  switch (code) {
    case FindingCode::UnresolvedViewpoint: return "UnresolvedViewpoint";
    case FindingCode::UnknownViewpoint: return "UnknownViewpoint";
    case FindingCode::UnknownDescriptor: return "UnknownDescriptor";
    case FindingCode::TypeMismatch: return "TypeMismatch";
    case FindingCode::UncheckedType: return "UncheckedType";
    case FindingCode::RepeatedDescriptor: return "RepeatedDescriptor";
    case FindingCode::NestedNotAllowed: return "NestedNotAllowed";
    case FindingCode::UnresolvedScheme: return "UnresolvedScheme";
  }
  return "?";
}

bool ValidationReport::ok() const { return count(Severity::Error) == 0; }

std::size_t ValidationReport::count(FindingCode code) const {
  return static_cast<std::size_t>(std::count_if(
      findings.begin(), findings.end(), [&](const Finding& f) { return f.code == code; }));
}

std::size_t ValidationReport::count(Severity severity) const {
  return static_cast<std::size_t>(std::count_if(
      findings.begin(), findings.end(), [&](const Finding& f) { return f.severity == severity; }));
}

std::string ValidationReport::to_text() const {
  std::string out;
  for (const Finding& f : findings) {
    out += f.severity == Severity::Error ? "error: " : "warning: ";
    out += std::string(to_string(f.code)) + " at " + f.location + ": " + f.message + "\n";
  }
  return out;
}

std::string ValidationReport::to_porcelain() const {
  std::string out;
  for (const Finding& f : findings) {
    out += std::string(to_string(f.severity)) + "\t" + std::string(to_string(f.code)) + "\t" +
           f.location + "\t" + f.message + "\n";
  }
  return out;
}

namespace {

bool is_float(std::string_view s) {
  static const std::regex pattern(R"([+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)");
  return std::regex_match(s.begin(), s.end(), pattern);
}

bool is_date(std::string_view s) {
  static const std::regex pattern(R"((\d{4})-(\d{2})-(\d{2}))");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(s.begin(), s.end(), m, pattern)) return false;
  std::chrono::year_month_day ymd{std::chrono::year{std::stoi(m[1].str())},
                                  std::chrono::month{static_cast<unsigned>(std::stoi(m[2].str()))},
                                  std::chrono::day{static_cast<unsigned>(std::stoi(m[3].str()))}};
  return ymd.ok();
}

ValueCheck mismatch(ValueKind kind, std::string_view text, std::string why = {}) {
  std::string detail = "expected " + std::string(to_string(kind)) + ", found '" +
                       detail::collapse_ws(text) + "'";
  if (!why.empty()) detail += " (" + why + ")";
  return {ValueCheck::Status::Mismatch, std::move(detail)};
}

}  // namespace

ValueCheck validate_value(ValueKind kind, std::string_view text) {
  switch (kind) {
    case ValueKind::PCDATA:
      return {};
    case ValueKind::DATE:
      return is_date(text) ? ValueCheck{} : mismatch(kind, text, "YYYY-MM-DD");
    case ValueKind::TIME:
      try {
        parse_timecode(text);
        return {};
      } catch (const Error& e) {
        return mismatch(kind, text, e.what());
      }
    case ValueKind::FLOAT:
      return is_float(text) ? ValueCheck{} : mismatch(kind, text);
    case ValueKind::URI:
    case ValueKind::SCHEME_REF:
      return is_uri_reference(text) ? ValueCheck{} : mismatch(ValueKind::URI, text);
    case ValueKind::ARRAY: {
      std::size_t start = 0;
      while (true) {
        auto comma = text.find(',', start);
        std::string_view item = detail::trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (!is_float(item)) return mismatch(kind, text, "comma-separated numbers");
        if (comma == std::string_view::npos) return {};
        start = comma + 1;
      }
    }
    case ValueKind::COMPOSITE:
    case ValueKind::BLOB:
      return {ValueCheck::Status::Unchecked,
              std::string(to_string(kind)) + " values are not checked"};
  }
  return {};
}

PropertyLookup lookup_property(const ViewpointBinding& binding, const PropertyNode& node,
                               const ResolvedScheme* context) {
  PropertyLookup out;
  out.scheme = context != nullptr ? context : binding.scheme(node.prefix);
  if (out.scheme == nullptr) return out;
  if (auto declared = binding.canonical_local(*out.scheme, node.local)) {
    out.descriptor = out.scheme->find(*declared);
  }
  return out;
}

namespace {

class Checker {
 public:
  Checker(const MdfDocument& doc, const ViewpointBinding& binding)
      : doc_(doc), binding_(binding) {}

  ValidationReport run() {
    for (const VpDecl& vp : doc_.viewpoints) {
      if (binding_.is_unresolved(vp.name)) {
        add(Severity::Warning, FindingCode::UnresolvedViewpoint, "VP:" + vp.name,
            "no catalog entry for " + vp.href + "; properties under " + vp.name +
                " are not checked");
      }
    }
    for (std::size_t i = 0; i < doc_.descriptions.size(); ++i) {
      check_list(doc_.descriptions[i].properties, nullptr,
                 "Description[" + std::to_string(i) + "]");
    }
    return std::move(report_);
  }

 private:
  void add(Severity s, FindingCode c, std::string location, std::string message) {
    report_.findings.push_back({s, c, std::move(location), std::move(message)});
  }

  void check_list(const std::vector<PropertyNode>& nodes, const ResolvedScheme* context,
                  const std::string& path) {
    std::map<std::pair<std::string, std::string>, int> seen;
    for (const PropertyNode& node : nodes) {
      if (doc_.find_viewpoint(node.prefix) == nullptr) {
        add(Severity::Error, FindingCode::UnknownViewpoint, path + "/" + node.qname(),
            "prefix " + node.prefix + " is not a declared viewpoint");
        continue;
      }
      if (context == nullptr && binding_.is_unresolved(node.prefix)) continue;
      PropertyLookup found = lookup_property(binding_, node, context);
      if (found.scheme == nullptr) continue;
      if (found.descriptor == nullptr) {
        add(Severity::Error, FindingCode::UnknownDescriptor, path + "/" + node.qname(),
            "scheme " + found.scheme->name + " has no descriptor " + node.local);
        continue;
      }
      const DescriptorDecl& decl = found.descriptor->decl;
      std::string here = path + "/" + node.prefix + ":" + decl.local;
      if (++seen[{node.prefix, decl.local}] > 1 && decl.multiplicity == Multiplicity::One) {
        add(Severity::Error, FindingCode::RepeatedDescriptor, here,
            decl.qualified_id + " may appear only once");
      }
      const ValueType& type = decl.value_type;
      if (node.is_text()) {
        ValueCheck check = validate_value(type.kind, node.text());
        if (check.status == ValueCheck::Status::Mismatch) {
          add(Severity::Error, FindingCode::TypeMismatch, here, check.detail);
        } else if (check.status == ValueCheck::Status::Unchecked) {
          add(Severity::Warning, FindingCode::UncheckedType, here, check.detail);
        }
        continue;
      }
      if (type.kind != ValueKind::SCHEME_REF) {
        add(Severity::Error, FindingCode::NestedNotAllowed, here,
            decl.qualified_id + " is " + std::string(to_string(type.kind)) +
                " and cannot hold nested properties");
        continue;
      }
      auto ref = binding_.scheme_refs.find(type.scheme_uri);
      if (ref == binding_.scheme_refs.end()) {
        add(Severity::Warning, FindingCode::UnresolvedScheme, here,
            "no catalog entry for " + type.scheme_uri + "; nested properties are not checked");
        continue;
      }
      check_list(node.children(), &ref->second, here);
    }
  }

  const MdfDocument& doc_;
  const ViewpointBinding& binding_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate(const MdfDocument& doc, const ViewpointBinding& binding) {
  return Checker(doc, binding).run();
}

}  // namespace mdf
