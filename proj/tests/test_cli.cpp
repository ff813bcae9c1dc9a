#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "culab/cli.hpp"

using namespace culab;

TEST_CASE("document parsing") {
  Document doc = parse_document(R"({
    "version": 1,
    "semigroups": {"car": {"kind": "softened", "m": 2}},
    "elements": {
      "a": {"sg": "car", "soft": "1/2"},
      "b": {"sg": "car", "compact": "1/2"}
    },
    "queries": [{"op": "leq", "a": "a", "b": "b"}]
  })");
  CHECK(doc.sg.count("car") == 1);
  CHECK(doc.el.count("a") == 1);
  Report rep = run(doc);
  REQUIRE(rep.entries.size() == 1);
  CHECK(rep.entries[0].value == "true");
  CHECK(rep.exit_code() == 0);

  // empty declarations are a valid document
  Document empty = parse_document(R"({"version": 1})");
  CHECK(run(empty).entries.empty());

  CHECK_THROWS_WITH_AS(parse_document(R"({"version": 2})"), doctest::Contains("version"), CuError);
  CHECK_THROWS_WITH_AS(
      parse_document(R"({"version": 1, "semigroups": {"x": {"kind": "nope"}}})"),
      doctest::Contains("unknown semigroup kind"), CuError);
  CHECK_THROWS_WITH_AS(
      parse_document(
          R"({"version": 1, "semigroups": {"n": {"kind": "nbar"}}, "elements": {"e": {"sg": "n", "compact": "1/0"}}})"),
      doctest::Contains("zero denominator"), CuError);
  CHECK_THROWS_WITH_AS(
      parse_document(R"({"version": 1, "elements": {"e": {"sg": "ghost", "compact": "1"}}})"),
      doctest::Contains("unknown semigroup"), CuError);

  // malformed text reports a position
  try {
    parse_document("{\n  \"version\": 1,\n  oops\n}");
    CHECK(false);
  } catch (const CuError& e) {
    CHECK(e.code() == ErrCode::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("serialization round trip") {
  std::string text = R"({
    "version": 1,
    "seed": 42,
    "bounds": {"denom_bound": 8},
    "semigroups": {"n": {"kind": "nbar"}, "p": {"kind": "product", "factors": [{"kind": "nbar"}, {"kind": "nbar"}]}},
    "elements": {"one": {"sg": "n", "compact": 1}},
    "queries": [{"op": "is_compact", "a": "one"}, {"op": "detect_elementary", "sg": "p"}]
  })";
  Document d1 = parse_document(text);
  std::string s1 = serialize(d1);
  Document d2 = parse_document(s1);
  CHECK(serialize(d2) == s1);
  CHECK(d2.seed == 42);
  CHECK(d2.bounds.denom_bound == 8);
  // the reparsed document runs identically
  CHECK(run(d1).plain() == run(d2).plain());
}

TEST_CASE("command filtering and expectations") {
  Document doc = parse_document(R"({
    "version": 1,
    "semigroups": {"n": {"kind": "nbar"}},
    "elements": {"one": {"sg": "n", "compact": 1}, "top": {"sg": "n", "soft": "inf"}},
    "queries": [
      {"op": "leq", "a": "one", "b": "top"},
      {"op": "detect_elementary", "sg": "n"},
      {"op": "axioms", "sg": "n", "axioms": ["O5"]}
    ]
  })");
  CHECK(run(doc, "compare").entries.size() == 1);
  CHECK(run(doc, "functionals").entries.size() == 2);  // verdict + witness line
  CHECK(run(doc, "axioms").entries.size() == 1);
  CHECK(run(doc).entries.size() == 4);
  CHECK(run(doc).exit_code() == 0);

  // a wrong expectation flips the exit code
  Document bad = parse_document(R"({
    "version": 1,
    "semigroups": {"n": {"kind": "nbar"}},
    "elements": {"one": {"sg": "n", "compact": 1}, "top": {"sg": "n", "soft": "inf"}},
    "queries": [{"op": "leq", "a": "top", "b": "one", "expect": true}]
  })");
  CHECK(run(bad).exit_code() == 1);
}

TEST_CASE("concrete and construct queries") {
  Document doc = parse_document(R"({
    "version": 1,
    "queries": [
      {"op": "spectral_dtau", "a": {"dim": 3, "eigenvalues": ["1/2", "1/3", 0]}},
      {"op": "layer_cake", "a": {"dim": 3, "eigenvalues": ["1/2", "1/3", 0]}},
      {"op": "pl_layer_cake", "f": {"tent": ["1/4", "1/2"]}, "mu": {"lebesgue": 1}},
      {"op": "limit_scale", "m": 2}
    ]
  })");
  Report rep = run(doc);
  REQUIRE(rep.entries.size() == 5);
  CHECK(rep.entries[0].value == "2/3");
  CHECK(rep.entries[1].value == "5/18");
  CHECK(rep.entries[2].value == "1/8");
  CHECK(rep.entries[4].value == "N[1/2] u (0,inf]");
  CHECK(rep.exit_code() == 0);
}

TEST_CASE("fixture corpus") {
  auto names = demo_names();
  REQUIRE(names.size() == 5);
  for (const auto& name : names) {
    Document doc = demo_document(name);
    Report rep = run(doc);
    CHECK_MESSAGE(rep.exit_code() == 0, name);
    CHECK_FALSE(rep.entries.empty());
    // reports are byte-stable across runs
    CHECK(run(doc).plain() == rep.plain());
    CHECK(run(doc).structured() == rep.structured());
  }
  CHECK_THROWS_WITH_AS(demo_document("no-such"), doctest::Contains("no fixture"), CuError);

  // the demo op inlines a fixture into a host document
  Document host = parse_document(
      R"({"version": 1, "queries": [{"op": "demo", "name": "toeplitz-wc"}]})");
  Report rep = run(host, "demo");
  REQUIRE(rep.entries.size() == 1);
  CHECK(rep.entries[0].value.find("witness (inf, 0, inf)") != std::string::npos);
  CHECK(rep.exit_code() == 0);
}
