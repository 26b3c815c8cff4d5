#include <doctest.h>

#include <regex>
#include <sstream>

#include "../support.hpp"
#include "mdf/cli.hpp"

using namespace mdf;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string cat() { return testing::catalog_path().string(); }
std::string ex(int n) { return testing::example_path(n).string(); }

std::size_t lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("parse") {
    Run tree = run({"parse", ex(1), "--tree"});
    CHECK(tree.code == kExitOk);
    CHECK(tree.out.rfind("MDF\n  Description(", 0) == 0);
    CHECK(lines(tree.out) == 8);
    CHECK(run({"tree", ex(1)}).out == tree.out);

    Run ok = run({"parse", ex(5)});
    CHECK(ok.code == kExitOk);
    CHECK(ok.out == "OK\n");
    CHECK(ok.err.empty());
  }

  TEST_CASE("parse failures") {
    Run missing = run({"parse", "missing.mdf"});
    CHECK(missing.code == kExitIo);
    CHECK(lines(missing.err) == 1);

    testing::TempDir dir;
    dir.write("bad.mdf", "<?MDF VP:DOC href=\"d\" ?>\n<MDF:Description>\n  <DOC:Title>x</DOC:Titel>\n");
    std::string bad = (dir.path / "bad.mdf").string();
    Run r = run({"parse", bad});
    CHECK(r.code == kExitParse);
    CHECK(r.out.empty());
    CHECK(r.err.rfind(bad + ":3:15: ", 0) == 0);
    CHECK(lines(r.err) == 1);
  }

  TEST_CASE("validate") {
    CHECK(run({"--catalog", cat(), "validate", ex(4)}).code == kExitOk);

    Run six = run({"--catalog", cat(), "--porcelain", "validate", ex(6)});
    CHECK(six.code == kExitOk);
    CHECK(six.out.rfind("Warning\tUnresolvedViewpoint\tVP:OCLC\t", 0) == 0);
    CHECK(lines(six.out) == 1);
    // global flags may follow the subcommand
    CHECK(run({"validate", ex(6), "--catalog", cat(), "--porcelain"}).out == six.out);

    testing::TempDir dir;
    dir.write("t.mdf", "<?MDF VP:VIDEO href=\"http://155.69.66.134:8000/VIDEO\" ?>\n"
                       "<MDF:Description About=\"http://x/a\"><VIDEO:Rate>fast</VIDEO:Rate>"
                       "</MDF:Description>\n");
    Run bad = run({"--catalog", cat(), "validate", (dir.path / "t.mdf").string()});
    CHECK(bad.code == kExitValidation);
    CHECK(bad.out.find("TypeMismatch") != std::string::npos);
  }

  TEST_CASE("catalog problems exit 3") {
    Run r = run({"--catalog", "/nonexistent/catalog.txt", "validate", ex(1)});
    CHECK(r.code == kExitIo);
    CHECK(lines(r.err) == 1);

    testing::TempDir dir;
    dir.write("catalog.txt", "http://a = nothing.dsd\n");
    Run d = run({"--catalog", (dir.path / "catalog.txt").string(), "validate", ex(1)});
    CHECK(d.code == kExitIo);
    CHECK(d.err.find("catalog.txt:1:") != std::string::npos);
  }

  TEST_CASE("index and search") {
    testing::TempDir dir;
    std::string idx = (dir.path / "corpus.idx").string();
    Run built = run({"--catalog", cat(), "index", testing::corpus_dir().string(), "--out", idx});
    CHECK(built.code == kExitOk);
    InvertedIndex expect = index_corpus(testing::corpus_dir(), testing::shipped_schemas()).index;
    CHECK(built.out == "indexed " + std::to_string(expect.doc_count()) + " entities, " +
                           std::to_string(expect.postings.size()) + " postings\n");
    CHECK(expect.doc_count() >= 9);
    std::string first = testing::slurp(idx);
    CHECK(first == format_index(expect));

    CHECK(run({"--catalog", cat(), "index", testing::corpus_dir().string(), "--out", idx, "--threads", "1"})
              .code == kExitOk);
    CHECK(testing::slurp(idx) == first);

    Run hit = run({"--porcelain", "search", idx, "--query", "type=video subject=\"Ultra steel\""});
    CHECK(hit.code == kExitOk);
    CHECK(hit.out == "http://155.69.66.134:8000/Nhkvideo.mpg\n");

    Run human = run({"search", idx, "--query", "type=video subject=\"Ultra steel\""});
    CHECK(human.out.find("1\thttp://155.69.66.134:8000/Nhkvideo.mpg\n") == 0);

    Run none = run({"search", idx, "--query", "subject=nonexistentterm", "--porcelain"});
    CHECK(none.code == kExitOk);
    CHECK(none.out.empty());

    CHECK(run({"search", idx, "--query", ""}).code == kExitUsage);
    CHECK(run({"search", idx, "--query", "colour=red"}).code == kExitUsage);
  }

  TEST_CASE("empty corpus") {
    testing::TempDir dir;
    std::filesystem::create_directories(dir.path / "empty");
    std::string idx = (dir.path / "e.idx").string();
    Run r = run({"--catalog", cat(), "index", (dir.path / "empty").string(), "--out", idx});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "indexed 0 entities, 0 postings\n");
    CHECK(testing::slurp(idx) == "MDFIDX 1\nentities 0\n");
  }

  TEST_CASE("failing files are skipped with a warning") {
    testing::TempDir dir;
    dir.write("c/good.mdf", testing::slurp(testing::example_path(1)));
    dir.write("c/broken.mdf", "<?MDF VP:DOC href=\"d\" ?><MDF:Description>");
    dir.write("c/invalid.mdf", "<?MDF VP:VIDEO href=\"http://155.69.66.134:8000/VIDEO\" ?>\n"
                               "<MDF:Description About=\"http://x/a\"><VIDEO:Rate>fast</VIDEO:Rate>"
                               "</MDF:Description>\n");
    std::string idx = (dir.path / "i.idx").string();
    Run r = run({"--catalog", cat(), "index", (dir.path / "c").string(), "--out", idx});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "indexed 1 entities, " +
                       std::to_string(read_index(idx).postings.size()) + " postings\n");
    CHECK(lines(r.err) == 2);
  }

  TEST_CASE("index problems") {
    CHECK(run({"--catalog", cat(), "index", "/nonexistent/dir", "--out", "/tmp/x.idx"}).code == kExitIo);
    testing::TempDir dir;
    dir.write("bad.idx", "MDFIDX 9\nentities 0\n");
    Run r = run({"search", (dir.path / "bad.idx").string(), "--query", "title=x"});
    CHECK(r.code == kExitIo);
    CHECK(lines(r.err) == 1);
    CHECK(run({"search", "/nonexistent.idx", "--query", "title=x"}).code == kExitIo);
  }

  TEST_CASE("usage errors") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {}, {"frobnicate"}, {"parse"}, {"index", "dir"}, {"search", "idx"}, {"parse", "a", "--bogus"}}) {
      Run r = run(args);
      CHECK(r.code == kExitUsage);
      CHECK(lines(r.err) == 1);
      CHECK(r.out.empty());
    }
    Run help = run({"--help"});
    CHECK(help.code == kExitOk);
    CHECK(help.out.find("search") != std::string::npos);
  }

  TEST_CASE("porcelain output is stable") {
    testing::TempDir dir;
    std::string idx = (dir.path / "corpus.idx").string();
    run({"--catalog", cat(), "index", testing::corpus_dir().string(), "--out", idx});
    for (const char* q : {"title=bridge", "description=air shot", "publisher=nhk type=scene"}) {
      Run a = run({"--porcelain", "search", idx, "-q", q});
      Run b = run({"--porcelain", "search", idx, "-q", q});
      CHECK(a.out == b.out);
      Run human = run({"search", idx, "-q", q});
      // same result set in both modes
      std::istringstream in(human.out);
      std::string rebuilt;
      for (std::string line; std::getline(in, line);) {
        auto tab = line.find('\t');
        if (tab != std::string::npos) rebuilt += line.substr(tab + 1) + "\n";
      }
      CHECK(rebuilt == a.out);
    }
  }
}
