#include <doctest.h>

#include <regex>

#include "../support.hpp"
#include "mdf/validator.hpp"

using namespace mdf;

namespace {

ValidationReport check(const MdfDocument& doc) {
  return validate(doc, testing::shipped_schemas().bind(doc));
}

ValidationReport check(std::string_view src) { return check(parse_mdf(src)); }

std::string one_desc(const std::string& vp, const std::string& body) {
  return "<?MDF VP:" + vp + " href=\"http://155.69.66.134:8000/" + vp + "\" ?>\n" +
         "<MDF:Description About=\"http://x/a\">\n" + body + "</MDF:Description>\n";
}

}  // namespace

TEST_SUITE("validator") {
  TEST_CASE("value checks") {
    using S = ValueCheck::Status;
    CHECK(validate_value(ValueKind::TIME, "00:00:08:13").status == S::Ok);
    CHECK(validate_value(ValueKind::TIME, "00:00:70:00").status == S::Mismatch);
    CHECK(validate_value(ValueKind::URI, "http://155.69.66.134:8000/Nhkvideo.mpg#frame1").ok());
    CHECK(validate_value(ValueKind::URI, "not a uri").status == S::Mismatch);
    CHECK(validate_value(ValueKind::FLOAT, "30").ok());
    CHECK(validate_value(ValueKind::FLOAT, "-1.5e3").ok());
    CHECK(validate_value(ValueKind::FLOAT, ".5").ok());
    CHECK(validate_value(ValueKind::FLOAT, "fast").status == S::Mismatch);
    CHECK(validate_value(ValueKind::FLOAT, "").status == S::Mismatch);
    CHECK(validate_value(ValueKind::DATE, "1999-02-28").ok());
    CHECK(validate_value(ValueKind::DATE, "1999-02-30").status == S::Mismatch);
    CHECK(validate_value(ValueKind::DATE, "28/02/1999").status == S::Mismatch);
    CHECK(validate_value(ValueKind::ARRAY, "1, 2.5,3").ok());
    CHECK(validate_value(ValueKind::ARRAY, "1,,3").status == S::Mismatch);
    CHECK(validate_value(ValueKind::PCDATA, "anything at all").ok());
    CHECK(validate_value(ValueKind::COMPOSITE, "Mixed").status == S::Unchecked);
    CHECK(validate_value(ValueKind::BLOB, "").status == S::Unchecked);
  }

  TEST_CASE("examples 1 to 4 are clean") {
    for (int n = 1; n <= 4; ++n) {
      ValidationReport r = check(testing::example(n));
      CHECK_MESSAGE(r.findings.empty(), "example " << n << "\n" << r.to_text());
    }
  }

  TEST_CASE("example 6 has one warning") {
    ValidationReport r = check(testing::example(6));
    CHECK(r.ok());
    REQUIRE(r.findings.size() == 1);
    CHECK(r.findings[0].severity == Severity::Warning);
    CHECK(r.findings[0].code == FindingCode::UnresolvedViewpoint);
    CHECK(r.findings[0].location == "VP:OCLC");
  }

  TEST_CASE("rate must be a float") {
    ValidationReport r = check(one_desc("VIDEO", "<VIDEO:Rate>fast</VIDEO:Rate>\n"));
    REQUIRE(r.findings.size() == 1);
    CHECK(r.findings[0].code == FindingCode::TypeMismatch);
    CHECK(r.findings[0].location == "Description[0]/VIDEO:Rate");
    CHECK(r.findings[0].message.find("FLOAT") != std::string::npos);
    CHECK_FALSE(r.ok());
  }

  TEST_CASE("unknown descriptor and viewpoint") {
    ValidationReport r = check(one_desc("DOC", "<DOC:Colour>red</DOC:Colour>\n<X:Title>t</X:Title>\n"));
    REQUIRE(r.findings.size() == 2);
    CHECK(r.findings[0].code == FindingCode::UnknownDescriptor);
    CHECK(r.findings[0].location == "Description[0]/DOC:Colour");
    CHECK(r.findings[1].code == FindingCode::UnknownViewpoint);
    CHECK(r.findings[1].location == "Description[0]/X:Title");
  }

  TEST_CASE("repeated single-valued descriptor") {
    ValidationReport r =
        check(one_desc("DOC", "<DOC:Subject>a</DOC:Subject>\n<DOC:Subj>b</DOC:Subj>\n"));
    REQUIRE(r.findings.size() == 1);
    CHECK(r.findings[0].code == FindingCode::RepeatedDescriptor);
    CHECK(r.findings[0].location == "Description[0]/DOC:Subj");
    // Cast is starred in MOVIE's content model
    CHECK(check(one_desc("MOVIE", "<MOVIE:Cast>a</MOVIE:Cast>\n<MOVIE:Cast>b</MOVIE:Cast>\n")).findings.empty());
  }

  TEST_CASE("nested values") {
    ValidationReport bad = check(one_desc("DOC", "<DOC:Title><DOC:Rm>x</DOC:Rm></DOC:Title>\n"));
    REQUIRE(bad.findings.size() == 1);
    CHECK(bad.findings[0].code == FindingCode::NestedNotAllowed);

    ValidationReport deep = check(
        "<?MDF VP:SCENE href=\"http://155.69.66.134:8000/SCENE\" ?>\n"
        "<?MDF VP:OBJECT href=\"http://155.69.66.134:8000/OBJECT\" ?>\n" +
        one_desc("MOVIE", "<MOVIE:Scene>\n<SCENE:StartTime>later</SCENE:StartTime>\n"
                 "<SCENE:Object><OBJECT:Position>1,x</OBJECT:Position></SCENE:Object>\n"
                 "</MOVIE:Scene>\n"));
    // nested prefixes must be declared viewpoints too
    ValidationReport undeclared = check(one_desc("MOVIE", "<MOVIE:Scene><SCENE:ID>x</SCENE:ID></MOVIE:Scene>\n"));
    REQUIRE(undeclared.findings.size() == 1);
    CHECK(undeclared.findings[0].code == FindingCode::UnknownViewpoint);
    REQUIRE(deep.findings.size() == 2);
    CHECK(deep.findings[0].location == "Description[0]/MOVIE:Scene/SCENE:StartTime");
    CHECK(deep.findings[1].location == "Description[0]/MOVIE:Scene/SCENE:Object/OBJECT:Position");
  }

  TEST_CASE("composite values warn") {
    ValidationReport r = check(one_desc("FRAME", "<FRAME:Color>Mixed</FRAME:Color>\n"));
    REQUIRE(r.findings.size() == 1);
    CHECK(r.findings[0].severity == Severity::Warning);
    CHECK(r.findings[0].code == FindingCode::UncheckedType);
    CHECK(r.ok());
  }

  TEST_CASE("unresolved nested scheme") {
    testing::TempDir dir;
    dir.write("s.dsd", "<!DSD S [ <!DS Part \"http://nowhere/part.dsd\"> ]>");
    dir.write("catalog.txt", "http://s = s.dsd\n");
    Schemas schemas = load_schemas(dir.path / "catalog.txt");
    auto doc = parse_mdf("<?MDF VP:S href=\"http://s\" ?><MDF:Description>"
                         "<S:Part><S:X>1</S:X></S:Part></MDF:Description>");
    ValidationReport r = validate(doc, schemas.bind(doc));
    REQUIRE(r.findings.size() == 1);
    CHECK(r.findings[0].code == FindingCode::UnresolvedScheme);
    CHECK(r.findings[0].severity == Severity::Warning);
  }

  TEST_CASE("corpus files validate without errors") {
    for (const auto& f : corpus_files(testing::corpus_dir())) {
      ValidationReport r = check(parse_mdf(testing::slurp(f)));
      CHECK_MESSAGE(r.ok(), f.string() << "\n" << r.to_text());
      CHECK(r.count(FindingCode::UncheckedType) == r.findings.size());
    }
  }

  TEST_CASE("alias transparency") {
    // Rewriting alias spellings to the declared names leaves the report unchanged.
    for (int n : {1, 2, 4, 6}) {
      std::string src = testing::slurp(testing::example_path(n));
      std::string declared = src;
      for (auto [from, to] : {std::pair{"Subject>", "Subj>"}, {"Publisher>", "Pub>"},
                              {"Description>", "Content>"}, {"Type>", "Res>"}}) {
        declared = std::regex_replace(declared, std::regex(std::string("(DOC|VIDEO|SCENE):") + from),
                                      std::string("$1:") + to);
      }
      CHECK(declared != src);
      CHECK(check(declared) == check(src));
    }
  }

  TEST_CASE("report rendering") {
    ValidationReport r = check(one_desc("VIDEO", "<VIDEO:Rate>fast</VIDEO:Rate>\n"));
    CHECK(r.to_porcelain().rfind("Error\tTypeMismatch\tDescription[0]/VIDEO:Rate\t", 0) == 0);
    CHECK(r.to_text().rfind("error: TypeMismatch at Description[0]/VIDEO:Rate: ", 0) == 0);
  }

  TEST_CASE("deterministic") {
    for (int n = 1; n <= 7; ++n) CHECK(check(testing::example(n)) == check(testing::example(n)));
  }
}
