#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "quiverhom/fixtures.hpp"
#include "quiverhom/textio.hpp"

using namespace qh;

TEST_CASE("parsing the shipped fixtures") {
  ParsedAlgebra a3 = parse_algebra_text(fixture_text("a3"));
  CHECK(a3.vertices.size() == 3);
  CHECK(a3.arrows.size() == 2);
  CHECK(a3.relations.empty());

  ParsedAlgebra zz = parse_algebra_text(fixture_text("zigzag4"));
  CHECK(zz.relations.size() == 1);
  CHECK(zz.relations[0].size() == 1);
  CHECK(zz.relations[0][0].arrows == std::vector<std::string>{"a", "b"});
  CHECK(build_parsed(zz)->dim() == 7);
}

TEST_CASE("errors carry locations") {
  CHECK_THROWS_WITH_AS(parse_algebra_text("vertices 1 2\narrow a 1 -> 2\n"),
                       doctest::Contains("line 2"), UsageError);
  CHECK_THROWS_WITH_AS(parse_algebra_text("vertices 1\nbogus 3\n"),
                       doctest::Contains("line 2"), UsageError);
  CHECK_THROWS_WITH_AS(
      parse_algebra_text("vertices 1 2\narrow a: 1 -> 3\n"),
      doctest::Contains("unknown vertex"), UsageError);
  // non-parallel relation is a semantic error
  CHECK_THROWS_WITH_AS(
      build_parsed(parse_algebra_text("vertices 1 2 3\narrow a: 1 -> 2\n"
                                      "arrow b: 2 -> 3\narrow c: 1 -> 2\n"
                                      "relation a*b + c\n")),
      doctest::Contains("parallel"), UsageError);
}

TEST_CASE("canonical printer round trip") {
  for (const std::string& name : fixture_names()) {
    ParsedAlgebra p1 = parse_algebra_text(fixture_text(name));
    ParsedAlgebra p2 = parse_algebra_text(print_algebra_text(p1));
    CHECK(p1 == p2);
    // printing is a fixed point on its own output
    CHECK(print_algebra_text(p1) == print_algebra_text(p2));
  }
  // signed combination survives the round trip
  std::string txt =
      "field 7\nvertices 1 2 3 4 5\narrow a: 1 -> 2\narrow b: 2 -> 3\n"
      "arrow c: 1 -> 4\narrow d: 4 -> 5\narrow e: 5 -> 3\n"
      "relation a*b - c*d*e\nmaxlen 12\n";
  ParsedAlgebra p = parse_algebra_text(txt);
  CHECK(p.relations[0][1].sign == -1);
  CHECK(parse_algebra_text(print_algebra_text(p)) == p);
}

TEST_CASE("module files round trip") {
  Ctx ctx;
  Algebra a3 = fixture_algebra("a3");
  for (int t = 0; t < 6; ++t) {
    Module M = random_module(ctx, a3, 8);
    Module back = parse_module_text(print_module_text(M), a3);
    CHECK(back.dims == M.dims);
    for (size_t ai = 0; ai < M.act.size(); ++ai) CHECK(back.act[ai] == M.act[ai]);
  }
  // relation-violating module text is rejected
  Algebra zz = fixture_algebra("zigzag4");
  std::string bad =
      "dim 1=1 2=1 3=1 4=0\nmatrix a\n1\nmatrix b\n1\n";
  CHECK_THROWS_AS(parse_module_text(bad, zz), UsageError);
}

TEST_CASE("field override") {
  Algebra two = build_parsed(parse_algebra_text(fixture_text("star5")), 2);
  CHECK(two->p == 2);
  CHECK(two->dim() == 12);
}
