#include <catch2/catch_amalgamated.hpp>

#include "lwb/lwb.hpp"

using namespace lwb;

TEST_CASE("reducts evaluate schemas tablewise") {
    FlexMorphism t = catalogs::t_imp_to_or();
    FiniteAlgebra b2 = catalogs::powerset_algebra(catalogs::sig_neg_or(), 1);
    FiniteAlgebra r = reduct(t, b2);
    CHECK(r.sig() == catalogs::sig_neg_imp());
    CHECK(r.size() == 2); // carrier unchanged
    CHECK(r.tables().at("imp") == std::vector<int>{1, 1, 0, 1});
    CHECK(r.tables().at("neg") == std::vector<int>{1, 0});
    CHECK_THROWS_AS(reduct(t, catalogs::powerset_algebra(catalogs::sig_neg_imp(), 1)),
                    Error);
}

TEST_CASE("reduct is functorial") {
    Signature so = catalogs::sig_neg_or();
    FiniteAlgebra b4 = catalogs::powerset_algebra(so, 2);
    CHECK(same_operation_tables(reduct(FlexMorphism::identity(so), b4), b4));

    FlexMorphism t = catalogs::t_imp_to_or();   // imp-signature -> or-signature
    FlexMorphism tp = catalogs::t_or_to_imp();  // or-signature -> imp-signature
    FiniteAlgebra bi = catalogs::powerset_algebra(catalogs::sig_neg_imp(), 2);
    // reduct along a composite equals the composite of reducts, outermost last
    FiniteAlgebra via_compose = reduct(compose(tp, t), bi);
    FiniteAlgebra stepwise = reduct(t, reduct(tp, bi));
    CHECK(same_operation_tables(via_compose, stepwise));
    CHECK(via_compose.size() == bi.size());
}

TEST_CASE("comparison component on the three-chain") {
    FlexMorphism incl = catalogs::incl_or_to_orand();
    FiniteAlgebra chain3 = heyting_chain(catalogs::sig_neg_or_and(), 3);
    EpiComponent e = natural_epi_component(incl, chain3, catalogs::ba_or_laws(),
                                           catalogs::ba_or_and_laws());
    INFO(e.report.text());
    CHECK(e.report.ok());
    CHECK(e.domain.size() == 2);
    CHECK(e.codomain.size() == 2);
    CHECK(e.full_reflection.theta.same(1, 2));
    CHECK_FALSE(e.full_reflection.theta.same(0, 1));
    CHECK(e.map.size() == 2);
}

TEST_CASE("refinement violations are detected, not patched over") {
    Signature sn = catalogs::sig_neg();
    Signature so = catalogs::sig_neg_or();
    QuasivarietySpec collapse = QuasivarietySpec::from_laws(
        "neg-fixed", sn, parse_laws({"neg(x0) = x0"}, sn));
    QuasivarietySpec everything =
        QuasivarietySpec::from_laws("all", so, parse_laws({"x0 = x0"}, so));
    FiniteAlgebra b2 = catalogs::powerset_algebra(so, 1);
    CHECK_THROWS_AS(
        natural_epi_component(catalogs::incl_neg_to_or(), b2, collapse, everything), Error);
}

TEST_CASE("translation extraction recovers schemas and strictness") {
    FlexMorphism t = catalogs::t_imp_to_or();
    FlexMorphism m = extract_translation(ReductFunctor{t}, 2);
    CHECK(to_string(m.schema("imp")) == "or(neg(x0),x1)");
    CHECK(to_string(m.schema("neg")) == "neg(x0)");
    CHECK_FALSE(m.is_strict());

    FlexMorphism incl = extract_translation(ReductFunctor{catalogs::incl_or_to_orand()}, 2);
    CHECK(incl.is_strict());

    // a binary source connective cannot be represented in one variable
    CHECK_THROWS_AS(extract_translation(ReductFunctor{t}, 1), Error);
}

TEST_CASE("round trips for the bundled morphisms") {
    FlexMorphism t = catalogs::t_imp_to_or();
    FlexMorphism tp = catalogs::t_or_to_imp();
    CHECK(roundtrip_check(FlexMorphism::identity(catalogs::sig_neg_or()),
                          catalogs::cpl_or())
              .ok());
    CHECK(roundtrip_check(t, catalogs::cpl_or()).ok());
    CHECK(roundtrip_check(compose(tp, t), catalogs::cpl_imp()).ok());
    CHECK(roundtrip_check(catalogs::incl_or_to_orand(), catalogs::cpl_or_and()).ok());
}

TEST_CASE("pullback oracle answers through the embedding") {
    FlexMorphism t = catalogs::t_imp_to_or();
    Logic lo = catalogs::cpl_or();
    PullbackOracle p(t, lo.oracle);
    Signature si = catalogs::sig_neg_imp();
    CHECK(p.entails({parse_formula("x0", si), parse_formula("imp(x0,x1)", si)},
                    parse_formula("x1", si)) == Verdict::True);
    CHECK(p.entails({}, parse_formula("imp(x0,x0)", si)) == Verdict::True);
    CHECK(p.entails({}, parse_formula("x0", si)) == Verdict::False);
    CHECK(p.has_fingerprint());
}

TEST_CASE("quotient logic of the classical interdefinition") {
    QuotientLogicResult q = construct_quotient_logic(
        catalogs::cpl_imp(), catalogs::cpl_or(), catalogs::cpl_or(),
        catalogs::t_imp_to_or(), FlexMorphism::identity(catalogs::sig_neg_or()),
        catalogs::cpl_pair(), CheckBounds{2, 2, 1});
    INFO(q.report.text());
    CHECK(q.report.ok());
    CHECK(q.f.is_strict());
    REQUIRE(q.a.has_value());
    CHECK(q.pair.has_value());
    // no two imp-signature connectives share an image here
    CHECK(q.alpha.all_conns().size() == catalogs::sig_neg_imp().all_conns().size());
    CHECK(entails(*q.a, {}, q.f.lift(parse_formula("imp(x0,x0)", catalogs::sig_neg_imp()))) ==
          Verdict::True);
}

TEST_CASE("double-negation reflection of the three-chain") {
    FiniteAlgebra chain3 = heyting_chain(catalogs::sig_heyting(), 3);
    GlivenkoResult g = glivenko_reflect(chain3);
    CHECK(g.filter == std::vector<int>{1, 2});
    CHECK(g.quotient.size() == 2);
    CHECK(is_boolean(g.quotient));
    CHECK(g.theta.same(1, 2));
    CHECK(g.projection == std::vector<int>{0, 1, 1});

    // Boolean algebras reflect trivially
    GlivenkoResult b = glivenko_reflect(catalogs::powerset_algebra(catalogs::sig_heyting(), 2));
    CHECK(b.quotient.size() == 4);
    CHECK(b.filter == std::vector<int>{3});
}

TEST_CASE("non-Heyting tables are rejected by the reflection") {
    Signature sig = catalogs::sig_heyting();
    FiniteAlgebra b2 = catalogs::powerset_algebra(sig, 1);
    std::map<std::string, std::vector<int>> tables = b2.tables();
    tables["imp"] = {0, 0, 0, 0};
    FiniteAlgebra broken(sig, 2, std::move(tables), "broken");
    CHECK_FALSE(is_heyting(broken));
    CHECK_THROWS_AS(glivenko_reflect(broken), Error);
}

TEST_CASE("stable equivalence witness for the classical pair of signatures") {
    MoritaWitness w{catalogs::t_imp_to_or(),
                    catalogs::t_or_to_imp(),
                    catalogs::ba_imp_laws(),
                    catalogs::ba_or_laws(),
                    catalogs::powerset_catalog(catalogs::sig_neg_imp(), {1, 2, 4}),
                    catalogs::powerset_catalog(catalogs::sig_neg_or(), {1, 2, 4})};
    Report r = check_stable_morita(w);
    INFO(r.text());
    CHECK(r.ok());

    // a witness whose catalog contains a non-member is refused outright
    MoritaWitness bad = w;
    bad.catalog_prime.push_back(heyting_chain(catalogs::sig_neg_or(), 3));
    CHECK_THROWS_AS(check_stable_morita(bad), Error);
}

TEST_CASE("iso-class counting is informational") {
    Signature so = catalogs::sig_neg_or();
    std::vector<FiniteAlgebra> cat{
        catalogs::powerset_algebra(so, 0),
        catalogs::powerset_algebra(so, 1),
        catalogs::powerset_algebra(so, 2),
        catalogs::powerset_algebra(so, 2),
    };
    CHECK(count_iso_classes(cat) == 3);
}
