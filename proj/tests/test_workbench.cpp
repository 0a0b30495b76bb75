#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "lwb/lwb.hpp"

using namespace lwb;
using Catch::Matchers::ContainsSubstring;

static std::string fixture(const std::string& name) {
    return std::string(LWB_WORKBENCH_DIR) + "/" + name;
}

TEST_CASE("empty input gives an empty workbench") {
    for (const char* text : {"", "  \n\t  "}) {
        Workbench w = Workbench::parse(text);
        CHECK(w.check_names().empty());
        CHECK(w.summary() ==
              "0 signatures, 0 algebras, 0 logics, 0 morphisms, 0 pairs, "
              "0 quasivarieties, 0 catalogs, 0 witnesses, 0 checks");
    }
}

TEST_CASE("bounds overrides replace only the fields given") {
    BoundsOverride over;
    over.nvars = 1;
    over.max_premises = 3;
    CheckBounds b = over.apply(CheckBounds{2, 3, 2});
    CHECK(b.nvars == 1);
    CHECK(b.depth == 3);
    CHECK(b.max_premises == 3);
}

static const char* kTiny = R"json({
  "signatures": {"s": {"connectives": {"neg": 1, "or": 2}}},
  "algebras": {"two": {"signature": "s", "size": 2,
                       "tables": {"neg": [1, 0], "or": [0, 1, 1, 1]}}},
  "logics": {"cpl": {"signature": "s",
                     "oracle": {"kind": "matrix-family",
                                "matrices": [{"algebra": "two", "designated": [1]}]}}},
  "morphisms": {"id": {"source": "s", "target": "s",
                       "schemas": {"neg": "neg(x0)", "or": "or(x0,x1)"}}},
  "checks": {"self": {"kind": "translation", "source": "cpl", "target": "cpl",
                      "morphism": "id",
                      "bounds": {"nvars": 1, "depth": 2, "premises": 1}}}
})json";

TEST_CASE("inline workbench runs a translation check") {
    Workbench w = Workbench::parse(kTiny);
    CHECK(w.check_names() == std::vector<std::string>{"self"});
    CHECK(w.summary() ==
          "1 signatures, 1 algebras, 1 logics, 1 morphisms, 0 pairs, "
          "0 quasivarieties, 0 catalogs, 0 witnesses, 1 checks");
    Report r = w.run("self");
    CHECK(r.ok());
    CHECK(!r.entries().empty());
    // same inputs, same report
    CHECK(r.text() == w.run("self").text());
    CHECK(r.json() == w.run("self").json());
}

TEST_CASE("malformed input is rejected with context") {
    CHECK_THROWS_WITH(Workbench::parse("{"), ContainsSubstring("workbench:"));
    CHECK_THROWS_WITH(Workbench::parse(R"({"nonsense": {}})"),
                      ContainsSubstring("unknown section"));
    CHECK_THROWS_WITH(Workbench::parse(R"({"signatures": []})"),
                      ContainsSubstring("must be an object"));
    CHECK_THROWS_WITH(Workbench::parse(R"({"checks": {"c": {"kind": "zap"}}})"),
                      ContainsSubstring("unknown kind"));
}

TEST_CASE("dangling references surface at load time") {
    const char* dangling = R"({
      "signatures": {"s": {"connectives": {"neg": 1}}},
      "checks": {"c": {"kind": "tarskian", "logic": "ghost"}}
    })";
    CHECK_THROWS_WITH(Workbench::parse(dangling), ContainsSubstring("'ghost'"));

    const char* bad_algebra = R"({
      "signatures": {"s": {"connectives": {"neg": 1}}},
      "algebras": {"a": {"signature": "missing", "size": 1, "tables": {"neg": [0]}}}
    })";
    CHECK_THROWS_WITH(Workbench::parse(bad_algebra), ContainsSubstring("'missing'"));
}

TEST_CASE("bundled classical workbench loads and validates") {
    Workbench w = Workbench::load(fixture("classical.lwb"));
    CHECK(w.summary() ==
          "2 signatures, 2 algebras, 2 logics, 2 morphisms, 1 pairs, "
          "2 quasivarieties, 3 catalogs, 1 witnesses, 13 checks");
    auto names = w.check_names();
    for (const char* expected : {"translation-forward", "density-forward",
                                 "pair-conditions", "stable-equivalence"})
        CHECK(std::find(names.begin(), names.end(), expected) != names.end());

    CHECK(w.run("membership-two").ok());

    BoundsOverride small;
    small.nvars = 1;
    small.depth = 2;
    small.max_premises = 1;
    CHECK(w.run("translation-forward", small).ok());
    CHECK(w.run("roundtrip-forward", small).ok());
}

TEST_CASE("bundled glivenko workbench loads and runs the reflection check") {
    Workbench w = Workbench::load(fixture("glivenko.lwb"));
    CHECK(w.check_names().size() == 3);
    Report r = w.run("glivenko-reflection");
    CHECK(r.ok());
    CHECK_THROWS_WITH(w.run("no-such"), ContainsSubstring("unknown check"));
}

TEST_CASE("missing file reports the path") {
    CHECK_THROWS_WITH(Workbench::load("/nonexistent/x.lwb"),
                      ContainsSubstring("cannot open"));
}
