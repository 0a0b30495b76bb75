#include <catch2/catch_amalgamated.hpp>

#include "lwb/lwb.hpp"

using namespace lwb;

TEST_CASE("signature basics") {
    Signature sig = catalogs::sig_neg_or();
    CHECK(sig.arity_of("neg") == 1);
    CHECK(sig.arity_of("or") == 2);
    CHECK(sig.contains("or"));
    CHECK_FALSE(sig.contains("imp"));
    CHECK_THROWS_AS(sig.arity_of("imp"), Error);
    CHECK(sig.all_conns() == std::vector<std::string>{"neg", "or"});
    CHECK(sig == catalogs::sig_neg_or());
    CHECK_FALSE(sig == catalogs::sig_neg_imp());
}

TEST_CASE("signature rejects duplicate connective names") {
    CHECK_THROWS_AS(Signature("bad", {{1, {"f"}}, {2, {"f"}}}), Error);
}

TEST_CASE("formula construction is arity checked") {
    Signature sig = catalogs::sig_neg_or();
    Formula x = Formula::var(0);
    CHECK_THROWS_AS(Formula::app(sig, "neg", {x, x}), Error);
    CHECK_THROWS_AS(Formula::var(-1), Error);
    Formula f = Formula::app(sig, "or", {x, Formula::app(sig, "neg", {x})});
    CHECK(f.depth() == 2);
    CHECK(f.var_span() == 1);
    CHECK(f.vars() == std::set<int>{0});
}

TEST_CASE("parse and print round trip") {
    Signature sig = catalogs::sig_neg_or();
    Formula f = parse_formula("or(neg(x0), x1)", sig);
    CHECK(to_string(f) == "or(neg(x0),x1)");
    CHECK(parse_formula(to_string(f), sig) == f);
}

TEST_CASE("unicode connective aliases normalize to ascii") {
    Signature sig = catalogs::sig_heyting();
    CHECK(to_string(parse_formula("∨(¬(x0),x1)", sig)) == "or(neg(x0),x1)");
    CHECK(to_string(parse_formula("→(x0,∧(x1,x0))", sig)) == "imp(x0,and(x1,x0))");
}

TEST_CASE("parse errors carry byte offsets") {
    Signature sig = catalogs::sig_neg_or();
    try {
        parse_formula("or(x0,zap(x1))", sig);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.pos == 6);
        CHECK(std::string(e.what()).find("zap") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_formula("or(x0)", sig), ParseError);
    CHECK_THROWS_AS(parse_formula("or(x0,x1) x2", sig), ParseError);
    CHECK_THROWS_AS(parse_formula("neg x0", sig), ParseError);
}

TEST_CASE("substitution is simultaneous") {
    Signature sig = catalogs::sig_neg_or();
    Formula f = parse_formula("or(x0,neg(x1))", sig);
    std::map<int, Formula> swap{{0, Formula::var(1)}, {1, Formula::var(0)}};
    CHECK(to_string(substitute(f, swap)) == "or(x1,neg(x0))");
    // x0 -> x1 must not be rewritten again by x1 -> or(x0,x0)
    std::map<int, Formula> chain{{0, Formula::var(1)},
                                 {1, parse_formula("or(x0,x0)", sig)}};
    CHECK(to_string(substitute(f, chain)) == "or(x1,neg(or(x0,x0)))");
}

TEST_CASE("morphism lift is homomorphic") {
    FlexMorphism t = catalogs::t_imp_to_or();
    Signature si = catalogs::sig_neg_imp();
    Formula f = parse_formula("imp(x0,imp(x1,x0))", si);
    CHECK(to_string(t.lift(f)) == "or(neg(x0),or(neg(x1),x0))");
    CHECK(t.lift(Formula::var(3)) == Formula::var(3));
    FlexMorphism tp = catalogs::t_or_to_imp();
    FlexMorphism round = compose(tp, t);
    CHECK(to_string(round.schema("imp")) == "imp(neg(neg(x0)),x1)");
    CHECK(round.source() == si);
    CHECK(round.target() == si);
}

TEST_CASE("strict morphisms take connectives to connectives") {
    FlexMorphism incl = catalogs::incl_or_to_orand();
    CHECK(incl.is_strict());
    CHECK(to_string(incl.schema("or")) == "or(x0,x1)");
    CHECK_FALSE(catalogs::t_imp_to_or().is_strict());
    auto strict = enumerate_strict_morphisms(catalogs::sig_neg_or(), catalogs::sig_neg_imp());
    REQUIRE(strict.size() == 1);
    CHECK(to_string(strict[0].schema("or")) == "imp(x0,x1)");
    CHECK(to_string(strict[0].schema("neg")) == "neg(x0)");
}

TEST_CASE("formula enumeration order is pinned") {
    Signature sig = catalogs::sig_neg_or();
    std::vector<Formula> fs = enumerate_formulas(sig, 1, 2);
    std::vector<std::string> got;
    for (const auto& f : fs)
        got.push_back(to_string(f));
    std::vector<std::string> want{
        "x0",
        "neg(x0)",
        "or(x0,x0)",
        "neg(neg(x0))",
        "neg(or(x0,x0))",
        "or(x0,neg(x0))",
        "or(x0,or(x0,x0))",
        "or(neg(x0),x0)",
        "or(neg(x0),neg(x0))",
        "or(neg(x0),or(x0,x0))",
        "or(or(x0,x0),x0)",
        "or(or(x0,x0),neg(x0))",
        "or(or(x0,x0),or(x0,x0))",
    };
    CHECK(got == want);
    CHECK(enumerate_formulas(sig, 1, 2) == fs); // deterministic
    CHECK(enumerate_formulas(sig, 2, 0).size() == 2);
    CHECK_THROWS_AS(enumerate_formulas(sig, 2, 4, 1000), Error);
}
