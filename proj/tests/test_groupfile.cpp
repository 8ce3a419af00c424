#include "doctest.h"

#include <sstream>

#include "regaff/construct.hpp"
#include "regaff/groupfile.hpp"

using namespace regaff;

TEST_CASE("round trip with generators, comments, and elements") {
  RegularSubgroupDesc r = build_rw(Field::finite(2, 2), 6);
  GroupFile gf;
  gf.field = &r.field();
  gf.n = r.n();
  gf.comments = {"built by build_rw", "order 4096"};
  gf.generators = r.generators();
  gf.elements = r.elements();

  std::ostringstream os;
  write_group_file(os, gf);
  std::istringstream is(os.str());
  GroupFile back = read_group_file(is);

  CHECK(back.field == gf.field);  // interned: same pointer
  CHECK(back.n == 6);
  CHECK(back.comments == gf.comments);
  CHECK(back.generators == gf.generators);
  CHECK(back.elements == gf.elements);
}

TEST_CASE("rational generator-only file") {
  RegularSubgroupDesc r = build_rw(Field::rationals(), 4);
  GroupFile gf{&r.field(), r.n(), {}, r.generators(), {}};
  std::ostringstream os;
  write_group_file(os, gf);
  CHECK(os.str().rfind("REGAFF v1\nFIELD Q\nDIM 4\nGEN ", 0) == 0);
  std::istringstream is(os.str());
  GroupFile back = read_group_file(is);
  CHECK(back.field->is_finite() == false);
  CHECK(back.generators.size() == 4);
  CHECK(back.elements.empty());
}

TEST_CASE("exact layout of a tiny file") {
  const Field& f2 = Field::finite(2);
  GroupFile gf{&f2, 1, {"note"}, {}, {AffineElem::identity(f2, 1)}};
  std::ostringstream os;
  write_group_file(os, gf);
  CHECK(os.str() == "REGAFF v1\nFIELD 2 1 0,1\nDIM 1\n# note\n1,0;0,1\n");
}

TEST_CASE("blank lines and CRLF are tolerated") {
  std::istringstream is(
      "REGAFF v1\r\n\r\nFIELD 2 1\n\nDIM 3\n\n# c\n\nGEN "
      "1,1,0,0;0,1,1,0;0,0,1,1;0,0,0,1\r\n\n");
  GroupFile gf = read_group_file(is);
  CHECK(gf.n == 3);
  CHECK(gf.generators.size() == 1);
  CHECK(gf.generators[0] == hegedus_agl32().first);
}

TEST_CASE("parse errors carry line numbers") {
  auto fails_at = [](const std::string& text, size_t line) {
    std::istringstream is(text);
    try {
      read_group_file(is);
      FAIL("expected GroupFileError for: ", text);
    } catch (const GroupFileError& e) {
      CHECK_MESSAGE(e.line() == line, e.what());
    }
  };
  fails_at("", 1);                                      // empty input
  fails_at("REGAFF v2\n", 1);                           // unknown version
  fails_at("REGAFF v1\nFIELD 4 1\nDIM 2\n", 2);         // 4 is not prime
  fails_at("REGAFF v1\nFIELD 2 2 1,0,1\nDIM 2\n", 2);   // reducible modulus
  fails_at("REGAFF v1\nFIELD 2 1\nDIM zero\n", 3);      // bad dimension
  fails_at("REGAFF v1\nFIELD 2 1\nDIM 0\n", 3);         // zero dimension
  fails_at("REGAFF v1\nFIELD 2 1\nDIM 1\n1,0;1,1\n", 4);   // first column not e0
  fails_at("REGAFF v1\nFIELD 2 1\nDIM 1\n1,0;0,0\n", 4);   // singular linear part
  fails_at("REGAFF v1\nFIELD 2 1\nDIM 2\n1,0;0,1\n", 4);   // wrong shape
  fails_at("REGAFF v1\nFIELD 2 1\nDIM 1\n1,x;0,1\n", 4);   // junk entry
  fails_at("REGAFF v1\nFIELD 2 1\nDIM 1\n# ok\n1,0;0,1\nGEN oops\n", 6);
  fails_at("REGAFF v1\nFIELD 3 x\nDIM 1\n", 2);         // malformed FIELD
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(read_group_file("/nonexistent/path/g.regaff"), std::runtime_error);
}
