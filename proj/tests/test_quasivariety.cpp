#include <cstdlib>

#include <catch2/catch_amalgamated.hpp>

#include "lwb/lwb.hpp"

using namespace lwb;

TEST_CASE("quasi-identity parsing") {
    Signature sig = catalogs::sig_neg_or();
    QuasiIdentity law = QuasiIdentity::parse("or(x0,x1) = or(x1,x0)", sig);
    CHECK(law.premises.empty());
    CHECK(to_string(law.conclusion.first) == "or(x0,x1)");
    CHECK(law.var_count() == 2);

    QuasiIdentity quasi =
        QuasiIdentity::parse("or(x0,x1) = x1 & or(x1,x0) = x0 => x0 = x1", sig);
    CHECK(quasi.premises.size() == 2);
    CHECK(quasi.str() == "or(x0,x1) = x1 & or(x1,x0) = x0 => x0 = x1");

    CHECK_THROWS_AS(QuasiIdentity::parse("or(x0,x1)", sig), Error);
    CHECK_THROWS_AS(QuasiIdentity::parse("or(x0,x1) = imp(x0,x1)", sig), Error);
}

TEST_CASE("membership by laws and by generators agrees on Boolean examples") {
    QuasivarietySpec ba = catalogs::ba_or_laws();
    Signature sig = catalogs::sig_neg_or();
    CHECK(in_quasivariety(catalogs::powerset_algebra(sig, 0), ba).member);
    CHECK(in_quasivariety(catalogs::powerset_algebra(sig, 1), ba).member);
    CHECK(in_quasivariety(catalogs::powerset_algebra(sig, 3), ba).member);
    MembershipResult bad = in_quasivariety(heyting_chain(sig, 3), ba);
    CHECK_FALSE(bad.member);
    CHECK_FALSE(bad.witness.empty());
}

TEST_CASE("disagreeing dual presentations are reported, not silently resolved") {
    Signature sig = catalogs::sig_neg_or();
    std::vector<QuasiIdentity> trivial{QuasiIdentity::parse("x0 = x0", sig)};
    QuasivarietySpec fake("fake", sig, std::move(trivial),
                          {catalogs::powerset_algebra(sig, 1)});
    // the three-chain satisfies the trivial law but is not in ISP(two)
    CHECK_THROWS_AS(in_quasivariety(heyting_chain(sig, 3), fake), Error);
}

TEST_CASE("reflect collapses the three-chain onto the two-element Boolean algebra") {
    Signature sig = catalogs::sig_neg_or();
    ReflectResult r = reflect(heyting_chain(sig, 3), catalogs::ba_or_laws());
    CHECK(r.algebra.size() == 2);
    CHECK(r.theta.same(1, 2));
    CHECK_FALSE(r.theta.same(0, 1));
    CHECK(r.projection == std::vector<int>{0, 1, 1});
    CHECK(is_hom(heyting_chain(sig, 3), r.algebra, r.projection));
    CHECK(in_quasivariety(r.algebra, catalogs::ba_or_laws()).member);
    CHECK(r.provenance.empty()); // laws were given directly

    // members reflect onto themselves
    ReflectResult id = reflect(catalogs::powerset_algebra(sig, 2), catalogs::ba_or_laws());
    CHECK(id.algebra.size() == 4);
    CHECK(id.theta.block_count() == 4);
}

TEST_CASE("reflect extracts laws when only generators are given") {
    Signature sig = catalogs::sig_neg_or();
    QuasivarietySpec gen_only =
        QuasivarietySpec::from_generators("gen-BA", sig, {catalogs::powerset_algebra(sig, 1)});
    ReflectResult r = reflect(heyting_chain(sig, 3), gen_only);
    CHECK(r.algebra.size() == 2);
    CHECK_FALSE(r.provenance.empty());
}

TEST_CASE("free algebras over the Boolean generators") {
    QuasivarietySpec ba = catalogs::ba_or_laws();
    FreeAlgebraResult f1 = free_algebra(ba, 1, 100000);
    CHECK(f1.algebra.size() == 4);
    REQUIRE(f1.generators.size() == 1);
    FreeAlgebraResult f2 = free_algebra(ba, 2, 100000);
    CHECK(f2.algebra.size() == 16);
    REQUIRE(f2.generators.size() == 2);
    CHECK(f2.generators[0] != f2.generators[1]);
    CHECK(in_quasivariety(f2.algebra, ba).member);
    CHECK_THROWS_AS(free_algebra(ba, 2, 10), Error);
    CHECK_THROWS_AS(free_algebra(catalogs::ha_laws(), 1, 100000), Error);
}

TEST_CASE("size cap reads the environment") {
    unsetenv("LWB_SIZE_CAP");
    CHECK(size_cap_from_env() == 100000);
    setenv("LWB_SIZE_CAP", "123", 1);
    CHECK(size_cap_from_env() == 123);
    setenv("LWB_SIZE_CAP", "bogus", 1);
    CHECK(size_cap_from_env() == 100000);
    unsetenv("LWB_SIZE_CAP");
}
