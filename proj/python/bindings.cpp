#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "mdf/cli.hpp"
#include "mdf/document.hpp"
#include "mdf/error.hpp"
#include "mdf/index.hpp"
#include "mdf/query.hpp"
#include "mdf/registry.hpp"
#include "mdf/timecode.hpp"
#include "mdf/validator.hpp"

namespace py = pybind11;

namespace {

// Owned by the module object.
PyObject* g_mdf_error = nullptr;
PyObject* g_parse_error = nullptr;

[[noreturn]] void raise(const mdf::Error& e) {
  PyObject* exc_type = g_mdf_error;
  py::dict extra;
  if (auto* pe = dynamic_cast<const mdf::ParseError*>(&e)) {
    exc_type = g_parse_error;
    extra["line"] = pe->line();
    extra["column"] = pe->column();
  } else if (auto* le = dynamic_cast<const mdf::LineError*>(&e)) {
    extra["line"] = le->line();
  }
  py::object exc = py::reinterpret_borrow<py::object>(exc_type)(e.what());
  exc.attr("code") = std::string(mdf::to_string(e.code()));
  for (auto item : extra) exc.attr(item.first) = item.second;
  PyErr_SetObject(exc_type, exc.ptr());
  throw py::error_already_set();
}

py::list findings_to_py(const mdf::ValidationReport& report) {
  py::list out;
  for (const auto& f : report.findings) {
    py::dict d;
    d["severity"] = std::string(mdf::to_string(f.severity));
    d["code"] = std::string(mdf::to_string(f.code));
    d["location"] = f.location;
    d["message"] = f.message;
    out.append(d);
  }
  return out;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const mdf::Error& e) {
    raise(e);
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multimedia description parsing, validation, indexing and search";

  g_mdf_error = PyErr_NewException("mdfkit.MdfError", PyExc_RuntimeError, nullptr);
  g_parse_error = PyErr_NewException("mdfkit.ParseError", g_mdf_error, nullptr);
  m.attr("MdfError") = py::reinterpret_steal<py::object>(g_mdf_error);
  m.attr("ParseError") = py::reinterpret_steal<py::object>(g_parse_error);

  py::class_<mdf::MdfDocument>(m, "Document")
      .def_property_readonly("syntax_uri", [](const mdf::MdfDocument& d) { return d.syntax_uri; })
      .def_property_readonly("viewpoints",
                             [](const mdf::MdfDocument& d) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& vp : d.viewpoints) out.emplace_back(vp.name, vp.href);
                               return out;
                             })
      .def_property_readonly("abouts",
                             [](const mdf::MdfDocument& d) {
                               std::vector<std::optional<std::string>> out;
                               for (const auto& desc : d.descriptions) out.push_back(desc.about);
                               return out;
                             })
      .def("serialize", [](const mdf::MdfDocument& d) { return mdf::serialize(d); })
      .def("dom_tree", [](const mdf::MdfDocument& d) { return mdf::dom_tree(d); })
      .def(py::self == py::self);

  m.def("parse_mdf", [](const std::string& text) { return guarded([&] { return mdf::parse_mdf(text); }); },
        py::arg("text"));
  m.def("normalize", &mdf::normalize, py::arg("text"));

  py::class_<mdf::InvertedIndex>(m, "Index")
      .def_property_readonly("doc_count", &mdf::InvertedIndex::doc_count)
      .def_property_readonly("entities", [](const mdf::InvertedIndex& i) { return i.entity_table; })
      .def("__len__", [](const mdf::InvertedIndex& i) { return i.postings.size(); })
      .def("format", [](const mdf::InvertedIndex& i) { return mdf::format_index(i); })
      .def("write",
           [](const mdf::InvertedIndex& i, const std::filesystem::path& p) {
             guarded([&] { mdf::write_index(i, p); return 0; });
           },
           py::arg("path"))
      .def("search",
           [](const mdf::InvertedIndex& i, const std::string& q) {
             return guarded([&] { return mdf::execute(mdf::parse_query(q), i).entities; });
           },
           py::arg("query"))
      .def(py::self == py::self);

  m.def("parse_index", [](const std::string& text) { return guarded([&] { return mdf::parse_index(text); }); },
        py::arg("text"));
  m.def("read_index",
        [](const std::filesystem::path& p) { return guarded([&] { return mdf::read_index(p); }); },
        py::arg("path"));

  py::class_<mdf::Schemas>(m, "Schemas")
      .def_property_readonly("scheme_names", [](const mdf::Schemas& s) { return s.registry.names(); })
      .def("resolve",
           [](const mdf::Schemas& s, const std::string& name) {
             return guarded([&] {
               std::vector<std::tuple<std::string, std::string, std::string>> out;
               for (const auto& d : s.registry.resolve(name).descriptors) {
                 out.emplace_back(d.decl.local, std::string(mdf::to_string(d.decl.value_type.kind)),
                                  d.origin);
               }
               return out;
             });
           },
           py::arg("name"))
      .def("validate",
           [](const mdf::Schemas& s, const mdf::MdfDocument& d) {
             return findings_to_py(mdf::validate(d, s.bind(d)));
           },
           py::arg("document"))
      .def("index_corpus",
           [](const mdf::Schemas& s, const std::filesystem::path& root, unsigned threads) {
             return guarded([&] {
               mdf::CorpusIndex c = mdf::index_corpus(root, s, threads);
               return std::make_pair(std::move(c.index), std::move(c.warnings));
             });
           },
           py::arg("root"), py::arg("threads") = 0);

  m.def("load_schemas",
        [](const std::filesystem::path& p) { return guarded([&] { return mdf::load_schemas(p); }); },
        py::arg("catalog"));

  m.def("parse_query",
        [](const std::string& text) {
          return guarded([&] {
            std::vector<std::pair<std::string, std::vector<std::string>>> out;
            for (const auto& c : mdf::parse_query(text).clauses) {
              out.emplace_back(std::string(mdf::to_string(c.field)), c.terms);
            }
            return out;
          });
        },
        py::arg("text"));

  m.def("retrieve",
        [](const std::string& entity, const std::filesystem::path& root) {
          return guarded([&] {
            mdf::EntityLocation loc = mdf::retrieve(entity, root);
            return std::make_tuple(loc.source, loc.entity, loc.fragment);
          });
        },
        py::arg("entity"), py::arg("corpus_root"));

  m.def("timecode_frames",
        [](const std::string& tc, int rate) {
          return guarded([&] { return mdf::timecode_to_frames(mdf::parse_timecode(tc), rate); });
        },
        py::arg("timecode"), py::arg("rate"));
  m.def("timecode_sub",
        [](const std::string& a, const std::string& b, int rate) {
          return guarded([&] {
            return mdf::render(mdf::timecode_sub(mdf::parse_timecode(a), mdf::parse_timecode(b), rate));
          });
        },
        py::arg("a"), py::arg("b"), py::arg("rate"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          int code = mdf::run_cli(args, out, err);
          return std::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
