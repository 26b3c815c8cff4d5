#include "mdf/cli.hpp"

#include <CLI11.hpp>
#include <ostream>

#include "mdf/catalog.hpp"
#include "mdf/document.hpp"
#include "mdf/error.hpp"
#include "mdf/index.hpp"
#include "mdf/query.hpp"
#include "mdf/registry.hpp"
#include "mdf/validator.hpp"

namespace mdf {

namespace {

struct Options {
  std::string catalog = "catalog.txt";
  bool porcelain = false;
  std::string file;
  bool tree = false;
  std::string out_path;
  std::string query;
  unsigned threads = 0;
};

class Runner {
 public:
  Runner(const Options& opt, std::ostream& out, std::ostream& err)
      : opt_(opt), out_(out), err_(err) {}

  int parse(bool tree) {
    MdfDocument doc;
    if (int rc = load_document(opt_.file, doc); rc != kExitOk) return rc;
    out_ << (tree ? dom_tree(doc) : std::string("OK\n"));
    return kExitOk;
  }

  int validate() {
    if (int rc = load_schemas_checked(); rc != kExitOk) return rc;
    MdfDocument doc;
    if (int rc = load_document(opt_.file, doc); rc != kExitOk) return rc;
    ValidationReport report = mdf::validate(doc, schemas_->bind(doc));
    if (opt_.porcelain) {
      out_ << report.to_porcelain();
    } else {
      out_ << report.to_text();
      out_ << opt_.file << ": " << report.count(Severity::Error) << " error(s), "
           << report.count(Severity::Warning) << " warning(s)\n";
    }
    return report.ok() ? kExitOk : kExitValidation;
  }

  int index() {
    if (int rc = load_schemas_checked(); rc != kExitOk) return rc;
    CorpusIndex built;
    try {
      built = index_corpus(opt_.file, *schemas_, opt_.threads);
    } catch (const Error& e) {
      return fail(kExitIo, e.what());
    }
    for (const auto& w : built.warnings) err_ << "mdf: warning: " << w << "\n";
    const InvertedIndex& idx = built.index;
    try {
      write_index(idx, opt_.out_path);
    } catch (const Error& e) {
      return fail(kExitIo, e.what());
    }
    out_ << "indexed " << idx.doc_count() << " entities, " << idx.postings.size()
         << " postings\n";
    return kExitOk;
  }

  int search() {
    Query query;
    try {
      query = parse_query(opt_.query);
    } catch (const Error& e) {
      return fail(kExitUsage, e.what());
    }
    InvertedIndex idx;
    try {
      idx = read_index(opt_.file);
    } catch (const LineError& e) {
      return fail(kExitIo, opt_.file + ":" + std::to_string(e.line()) + ": " + e.what());
    } catch (const Error& e) {
      return fail(kExitIo, e.what());
    }
    ResultSet results = execute(query, idx);
    if (opt_.porcelain) {
      for (const auto& uri : results.entities) out_ << uri << "\n";
    } else if (results.entities.empty()) {
      out_ << "no matches\n";
    } else {
      for (std::size_t i = 0; i < results.entities.size(); ++i) {
        out_ << (i + 1) << "\t" << results.entities[i] << "\n";
      }
      out_ << results.entities.size() << " match(es)\n";
    }
    return kExitOk;
  }

 private:
  int fail(int code, const std::string& message) {
    err_ << "mdf: " << message << "\n";
    return code;
  }

  int load_document(const std::string& path, MdfDocument& doc) {
    std::string source;
    try {
      source = read_text_file(path);
    } catch (const Error& e) {
      return fail(kExitIo, e.what());
    }
    try {
      doc = parse_mdf(source);
    } catch (const ParseError& e) {
      err_ << path << ":" << e.line()
           << ":" << e.column() << ": " << e.what() << "\n";
      return kExitParse;
    }
    return kExitOk;
  }

  int load_schemas_checked() {
    try {
      schemas_.emplace(load_schemas(opt_.catalog));
    } catch (const LineError& e) {
      std::string where = opt_.catalog;
      if (e.line() > 0) where += ":" + std::to_string(e.line());
      return fail(kExitIo, where + ": " + e.what());
    } catch (const Error& e) {
      return fail(kExitIo, opt_.catalog + ": " + e.what());
    }
    return kExitOk;
  }

  const Options& opt_;
  std::ostream& out_;
  std::ostream& err_;
  std::optional<Schemas> schemas_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Multimedia description toolkit", "mdf"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--catalog", opt.catalog, "Schema catalog file")->capture_default_str();
  app.add_flag("--porcelain", opt.porcelain, "Stable tab-separated output");

  auto* parse = app.add_subcommand("parse", "Parse a description file");
  parse->add_option("file", opt.file)->required();
  parse->add_flag("--tree", opt.tree, "Print the element tree");

  auto* tree = app.add_subcommand("tree", "Print the element tree of a description file");
  tree->add_option("file", opt.file)->required();

  auto* validate = app.add_subcommand("validate", "Check a description against its schemes");
  validate->add_option("file", opt.file)->required();

  auto* index = app.add_subcommand("index", "Build an index over a corpus directory");
  index->add_option("dir", opt.file)->required();
  index->add_option("--out,-o", opt.out_path, "Index file to write")->required();
  index->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");

  auto* search = app.add_subcommand("search", "Query an index file");
  search->add_option("index", opt.file)->required();
  search->add_option("--query,-q", opt.query, "field=value clauses")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "mdf: " << e.what() << "\n";
    return kExitUsage;
  }

  Runner runner(opt, out, err);
  try {
    if (parse->parsed()) return runner.parse(opt.tree);
    if (tree->parsed()) return runner.parse(true);
    if (validate->parsed()) return runner.validate();
    if (index->parsed()) return runner.index();
    if (search->parsed()) return runner.search();
  } catch (const std::exception& e) {
    err << "mdf: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace mdf
