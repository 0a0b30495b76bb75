#include <catch2/catch_amalgamated.hpp>

#include "lwb/lwb.hpp"

using namespace lwb;

namespace {

// three-element chain as a {neg,or} structure: or = max, neg(x) = (x -> 0)
FiniteAlgebra chain3_or() { return heyting_chain(catalogs::sig_neg_or(), 3); }

} // namespace

TEST_CASE("finite algebra validates its tables") {
    Signature sig = catalogs::sig_neg_or();
    std::map<std::string, std::vector<int>> short_or{{"neg", {1, 0}}, {"or", {0, 1, 1}}};
    CHECK_THROWS_AS(FiniteAlgebra(sig, 2, short_or, "bad"), Error);
    std::map<std::string, std::vector<int>> oob{{"neg", {1, 2}}, {"or", {0, 1, 1, 1}}};
    CHECK_THROWS_AS(FiniteAlgebra(sig, 2, oob, "bad"), Error);
    std::map<std::string, std::vector<int>> missing{{"neg", {1, 0}}};
    CHECK_THROWS_AS(FiniteAlgebra(sig, 2, missing, "bad"), Error);
    CHECK_THROWS_AS(FiniteAlgebra(sig, 0, {}, "empty"), Error);
}

TEST_CASE("tables are row major with the first argument most significant") {
    FiniteAlgebra c = chain3_or();
    CHECK(c.apply("or", std::vector<int>{1, 2}) == 2);
    CHECK(c.apply("or", std::vector<int>{2, 0}) == 2);
    CHECK(c.tables().at("or")[1 * 3 + 2] == 2);
    CHECK(c.apply("neg", std::vector<int>{0}) == 2);
    CHECK(c.apply("neg", std::vector<int>{1}) == 0);
}

TEST_CASE("term evaluation matches the tables") {
    Signature sig = catalogs::sig_neg_or();
    FiniteAlgebra b2 = catalogs::powerset_algebra(sig, 1);
    Formula f = parse_formula("or(neg(x0),x1)", sig);
    std::vector<int> env{1, 0};
    CHECK(eval_term(b2, f, env) == 0);
    env = {0, 0};
    CHECK(eval_term(b2, f, env) == 1);
}

TEST_CASE("hom enumeration on Boolean powersets") {
    Signature sig = catalogs::sig_neg_or();
    FiniteAlgebra b2 = catalogs::powerset_algebra(sig, 1);
    FiniteAlgebra b4 = catalogs::powerset_algebra(sig, 2);
    auto down = enumerate_homs(b4, b2);
    CHECK(down.size() == 2); // one projection per atom
    for (const auto& f : down)
        CHECK(is_hom(b4, b2, f));
    CHECK(enumerate_homs(b2, b2).size() == 1); // only the identity
    // without constants the image of 0 must still satisfy f0 <= neg(f0),
    // which forces the bottom-top embedding
    auto up = enumerate_homs(b2, b4);
    REQUIRE(up.size() == 1);
    CHECK(up[0] == std::vector<int>{0, 3});
    CHECK(find_homs_extending(b2, b4, {0, 3}).size() == 1);
    CHECK(find_homs_extending(b2, b4, {-1, 1}).empty());
}

TEST_CASE("isomorphism search sees through renumbering") {
    Signature sig = catalogs::sig_neg_or();
    FiniteAlgebra b4 = catalogs::powerset_algebra(sig, 2);
    // swap elements 1 and 2 (the two atoms)
    std::vector<int> p{0, 2, 1, 3};
    std::vector<int> q = p; // p is an involution
    std::map<std::string, std::vector<int>> tables;
    for (const auto& [c, tbl] : b4.tables()) {
        std::vector<int> out(tbl.size());
        if (c == "neg") {
            for (int x = 0; x < 4; ++x)
                out[x] = p[tbl[q[x]]];
        } else {
            for (int x = 0; x < 4; ++x)
                for (int y = 0; y < 4; ++y)
                    out[x * 4 + y] = p[tbl[q[x] * 4 + q[y]]];
        }
        tables.emplace(c, std::move(out));
    }
    FiniteAlgebra shuffled(sig, 4, std::move(tables), "shuffled");
    auto iso = find_isomorphism(b4, shuffled);
    REQUIRE(iso.has_value());
    CHECK(is_hom(b4, shuffled, *iso));
    CHECK_FALSE(find_isomorphism(b4, catalogs::powerset_algebra(sig, 1)).has_value());
    CHECK_FALSE(find_isomorphism(b4, chain3_or()).has_value());
}

TEST_CASE("congruence generation and quotients") {
    FiniteAlgebra c = chain3_or();
    std::vector<std::pair<int, int>> gen{{1, 2}};
    Congruence th = congruence_generated(c, gen);
    CHECK(th.same(1, 2));
    CHECK_FALSE(th.same(0, 1));
    CHECK(th.block_count() == 2);
    QuotientResult q = quotient_algebra(c, th);
    CHECK(q.algebra.size() == 2);
    CHECK(q.projection == std::vector<int>{0, 1, 1});
    CHECK(q.algebra.tables().at("or") == std::vector<int>{0, 1, 1, 1});
    CHECK(q.algebra.tables().at("neg") == std::vector<int>{1, 0});
    CHECK(is_hom(c, q.algebra, q.projection));

    // closing {0,1} under neg drags in the whole chain
    Congruence collapse = congruence_generated(c, {{0, 1}});
    CHECK(collapse.block_count() == 1);
}

TEST_CASE("all congruences of small algebras") {
    CHECK(all_congruences(chain3_or()).size() == 3);
    Signature sig = catalogs::sig_neg_or();
    CHECK(all_congruences(catalogs::powerset_algebra(sig, 2)).size() == 4);
    CHECK(all_congruences(catalogs::powerset_algebra(sig, 1)).size() == 2);
}

TEST_CASE("congruence refinement order") {
    Congruence fine = Congruence::from_reps({0, 1, 2});
    Congruence mid = Congruence::from_reps({0, 1, 1});
    Congruence total = Congruence::total(3);
    CHECK(fine.refines(mid));
    CHECK(mid.refines(total));
    CHECK_FALSE(total.refines(mid));
    CHECK_THROWS_AS(Congruence::from_reps({1, 0}), Error);
}
