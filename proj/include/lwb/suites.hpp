#pragma once

#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lwb/algebraization.hpp"
#include "lwb/catalogs.hpp"
#include "lwb/checks.hpp"
#include "lwb/representation.hpp"

namespace lwb::suites {

// One demonstration suite: a batch of reports, each with an expected outcome,
// plus free-form verified facts.  `passed` means every expectation held.
struct SuiteOutcome {
    std::string name;
    std::string statement;
    std::vector<std::pair<Report, bool>> reports; // report, expected ok?
    std::vector<std::string> notes;
    bool passed = true;

    void take(Report r, bool expect_ok = true) {
        passed = passed && (r.ok() == expect_ok);
        reports.emplace_back(std::move(r), expect_ok);
    }
    void note(bool ok, const std::string& fact) {
        passed = passed && ok;
        notes.push_back(std::string(ok ? "[ ok ] " : "[FAIL] ") + fact);
    }

    std::string text() const {
        std::ostringstream out;
        out << "suite " << name << "\n  " << statement << "\n";
        for (const auto& [r, expect_ok] : reports) {
            out << r.text();
            if (!expect_ok)
                out << (r.ok() ? "  !! expected this check to fail, but it passed\n"
                               : "  (failure expected: this run is a negative control)\n");
        }
        for (const auto& n : notes)
            out << n << "\n";
        out << (passed ? "suite passed" : "suite FAILED") << ": " << name << "\n";
        return out.str();
    }
};

// ---- criterion suites ----

inline SuiteOutcome classical_morita() {
    SuiteOutcome s;
    s.name = "classical-morita";
    s.statement = "the two classical interdefinition schemas are mutually inverse, dense, "
                  "conservative translations, and their reduct functors restore every "
                  "powerset algebra on both sides";
    Logic li = catalogs::cpl_imp();
    Logic lo = catalogs::cpl_or();
    FlexMorphism t = catalogs::t_imp_to_or();
    FlexMorphism tp = catalogs::t_or_to_imp();
    const CheckBounds b{2, 3, 2};
    s.take(check_translation(li, lo, t, b));
    s.take(check_conservative(li, lo, t, b));
    s.take(check_dense(li, lo, t, b));
    s.take(check_translation(lo, li, tp, b));
    s.take(check_conservative(lo, li, tp, b));
    s.take(check_dense(lo, li, tp, b));
    MoritaWitness w{t,
                    tp,
                    catalogs::ba_imp_laws(),
                    catalogs::ba_or_laws(),
                    catalogs::powerset_catalog(catalogs::sig_neg_imp(), {1, 2, 4, 8, 16}),
                    catalogs::powerset_catalog(catalogs::sig_neg_or(), {1, 2, 4, 8, 16})};
    s.take(check_stable_morita(w));
    return s;
}

inline SuiteOutcome no_strict_iso() {
    SuiteOutcome s;
    s.name = "no-strict-iso";
    s.statement = "no strict connective renaming between the {neg,or} and {neg,imp} "
                  "signatures is conservative, so the interdefinition genuinely needs "
                  "formula schemas";
    Logic lo = catalogs::cpl_or();
    Logic li = catalogs::cpl_imp();
    const CheckBounds b{2, 3, 2};
    auto fw = enumerate_strict_morphisms(catalogs::sig_neg_or(), catalogs::sig_neg_imp());
    auto bw = enumerate_strict_morphisms(catalogs::sig_neg_imp(), catalogs::sig_neg_or());
    s.note(!fw.empty() && !bw.empty(),
           "strict candidates exist in both directions (" + std::to_string(fw.size()) + " + " +
               std::to_string(bw.size()) + ")");
    for (const auto& m : fw)
        s.take(check_conservative(lo, li, m, b), false);
    for (const auto& m : bw)
        s.take(check_conservative(li, lo, m, b), false);
    return s;
}

namespace detail {

inline bool cong_leq(const Congruence& a, const Congruence& b, int n) {
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (a.same(x, y) && !b.same(x, y))
                return false;
    return true;
}

inline bool cong_equal(const Congruence& a, const Congruence& b, int n) {
    return cong_leq(a, b, n) && cong_leq(b, a, n);
}

// exhaustive reference for the reflector: the least congruence whose
// quotient lands in the quasivariety
inline std::optional<Congruence> brute_min_adequate(const FiniteAlgebra& a,
                                                    const QuasivarietySpec& qv) {
    std::vector<Congruence> fits;
    for (const Congruence& th : all_congruences(a)) {
        QuotientResult q = quotient_algebra(a, th);
        if (in_quasivariety(q.algebra, qv).member)
            fits.push_back(th);
    }
    for (const Congruence& th : fits) {
        bool least = true;
        for (const Congruence& other : fits)
            if (!cong_leq(th, other, a.size()))
                least = false;
        if (least)
            return th;
    }
    return std::nullopt;
}

inline bool reflector_matches_brute(const FiniteAlgebra& a, const QuasivarietySpec& qv,
                                    std::string& why) {
    ReflectResult r = reflect(a, qv);
    std::optional<Congruence> want = brute_min_adequate(a, qv);
    if (!want) {
        why = "exhaustive search found no least adequate congruence";
        return false;
    }
    if (!cong_equal(r.theta, *want, a.size())) {
        why = "reflector used " + std::to_string(r.theta.block_count()) +
              " blocks, exhaustive minimum has " + std::to_string(want->block_count());
        return false;
    }
    if (!in_quasivariety(r.algebra, qv).member) {
        why = "reflected algebra is not a member";
        return false;
    }
    return true;
}

} // namespace detail

inline SuiteOutcome reflector() {
    SuiteOutcome s;
    s.name = "reflector";
    s.statement = "the reflector computes the least congruence with a Boolean quotient, "
                  "verified against exhaustive congruence search on every tiny structure "
                  "and on seeded random three-element structures";
    QuasivarietySpec qv = catalogs::ba_or_laws();
    Signature sig = catalogs::sig_neg_or();

    Report small("reflector vs exhaustive minimum", "all {neg,or} structures with <= 2 elements");
    int agree = 0, total = 0;
    {
        std::map<std::string, std::vector<int>> t1{{"neg", {0}}, {"or", {0}}};
        FiniteAlgebra one(sig, 1, std::move(t1), "u1");
        std::string why;
        ++total;
        if (detail::reflector_matches_brute(one, qv, why))
            ++agree;
        else
            small.fail("structure u1", why);
    }
    for (int nt = 0; nt < 4; ++nt) {
        for (int ot = 0; ot < 16; ++ot) {
            std::map<std::string, std::vector<int>> tb{
                {"neg", {nt & 1, (nt >> 1) & 1}},
                {"or", {ot & 1, (ot >> 1) & 1, (ot >> 2) & 1, (ot >> 3) & 1}},
            };
            std::string nm = "n" + std::to_string(nt) + "o" + std::to_string(ot);
            FiniteAlgebra a(sig, 2, std::move(tb), nm);
            std::string why;
            ++total;
            if (detail::reflector_matches_brute(a, qv, why))
                ++agree;
            else
                small.fail("structure " + nm, why);
        }
    }
    if (agree == total)
        small.pass("all " + std::to_string(total) + " structures agree");
    s.take(std::move(small));

    Report random("reflector vs exhaustive minimum", "500 seeded random 3-element structures");
    std::mt19937 rng(20260815u);
    int ragree = 0;
    for (int i = 0; i < 500; ++i) {
        std::vector<int> neg(3), orr(9);
        for (int& v : neg)
            v = static_cast<int>(rng() % 3u);
        for (int& v : orr)
            v = static_cast<int>(rng() % 3u);
        std::map<std::string, std::vector<int>> tb{{"neg", neg}, {"or", orr}};
        FiniteAlgebra a(sig, 3, std::move(tb), "r" + std::to_string(i));
        std::string why;
        if (detail::reflector_matches_brute(a, qv, why))
            ++ragree;
        else
            random.fail("sample " + std::to_string(i), why);
    }
    if (ragree == 500)
        random.pass("all 500 samples agree");
    s.take(std::move(random));
    return s;
}

inline SuiteOutcome free_lindenbaum() {
    SuiteOutcome s;
    s.name = "free-lindenbaum";
    s.statement = "the classical provability quotient on one and two variables saturates "
                  "into finite algebras of sizes 4 and 16 that are free Boolean algebras "
                  "on the variable classes";
    Logic lo = catalogs::cpl_or();
    QuasivarietySpec qv = catalogs::ba_or_laws();
    auto tests = catalogs::powerset_catalog(catalogs::sig_neg_or(), {1, 2, 4, 8});

    LindenbaumResult shallow = lindenbaum_quotient(lo, 1, 2);
    s.note(!shallow.saturated, "one variable at depth 2 is still unsaturated");
    LindenbaumResult lt1 = lindenbaum_quotient(lo, 1, 3);
    s.note(lt1.saturated && lt1.reps.size() == 4,
           "one variable saturates at depth 3 into 4 classes");
    const std::vector<std::string> want1{"x0", "neg(x0)", "or(x0,neg(x0))",
                                         "neg(or(x0,neg(x0)))"};
    bool reps_ok = lt1.reps.size() == want1.size();
    for (std::size_t i = 0; reps_ok && i < want1.size(); ++i)
        reps_ok = to_string(lt1.reps[i]) == want1[i];
    s.note(reps_ok, "first-seen representatives are x0, neg(x0), or(x0,neg(x0)), "
                    "neg(or(x0,neg(x0)))");
    s.take(verify_free_object(lo, lt1, qv, tests));

    s.note(!lindenbaum_quotient(lo, 2, 3).saturated,
           "two variables at depth 3 are still unsaturated");
    LindenbaumResult lt2 = lindenbaum_quotient(lo, 2, 4);
    s.note(lt2.saturated && lt2.reps.size() == 16,
           "two variables saturate at depth 4 into 16 classes");
    s.take(verify_free_object(lo, lt2, qv, tests));
    return s;
}

inline SuiteOutcome bp_conditions() {
    SuiteOutcome s;
    s.name = "bp-conditions";
    s.statement = "the classical delta/epsilon/equivalence system satisfies all four "
                  "algebraization transfer conditions, and dropping one half of the "
                  "equivalence set breaks the formula round trip";
    Logic lo = catalogs::cpl_or();
    QuasivarietySpec qv = catalogs::ba_or_laws();
    const CheckBounds b{2, 2, 2};
    s.take(check_bp_conditions(lo, qv, catalogs::cpl_pair(), b));

    Report mutant = check_bp_conditions(lo, qv, catalogs::cpl_mutant_pair(), b);
    bool right_entry = false;
    bool theorem_side_intact = true;
    for (const auto& e : mutant.entries()) {
        if (e.instance.rfind("formula round trip", 0) == 0 &&
            e.verdict == CheckVerdict::Fail &&
            e.witness.find("x0") != std::string::npos)
            right_entry = true;
        if (e.instance.rfind("formulas-to-equations", 0) == 0 &&
            e.verdict != CheckVerdict::Pass)
            theorem_side_intact = false;
    }
    s.take(std::move(mutant), false);
    s.note(right_entry, "the one-sided system fails the formula round trip, witnessed by x0");
    s.note(theorem_side_intact,
           "the formulas-to-equations direction, which never consults the equivalence set, "
           "still passes");
    return s;
}

inline SuiteOutcome reduct_restriction() {
    SuiteOutcome s;
    s.name = "reduct-restriction";
    s.statement = "reduct functors restrict between the matching quasivarieties, and the "
                  "comparison map from reflect-then-reduct to reduct-then-reflect is a "
                  "natural surjection";
    FlexMorphism t = catalogs::t_imp_to_or();
    FlexMorphism incl = catalogs::incl_or_to_orand();
    QuasivarietySpec ba_or = catalogs::ba_or_laws();
    QuasivarietySpec ba_imp = catalogs::ba_imp_laws();
    QuasivarietySpec ba_oa = catalogs::ba_or_and_laws();

    s.take(check_qv_restriction(t, ba_imp, ba_or,
                                catalogs::powerset_catalog(catalogs::sig_neg_or(),
                                                           {1, 2, 4, 8, 16})));
    s.take(check_qv_restriction(incl, ba_or, ba_oa,
                                catalogs::powerset_catalog(catalogs::sig_neg_or_and(),
                                                           {1, 2, 4, 8, 16})));

    auto cat_or = catalogs::powerset_catalog(catalogs::sig_neg_or(), {1, 2, 4});
    cat_or.push_back(heyting_chain(catalogs::sig_neg_or(), 3));
    s.take(check_natural_epi(t, ba_imp, ba_or, cat_or));

    auto cat_oa = catalogs::powerset_catalog(catalogs::sig_neg_or_and(), {1, 2, 4});
    FiniteAlgebra chain3 = heyting_chain(catalogs::sig_neg_or_and(), 3);
    cat_oa.push_back(chain3);
    s.take(check_natural_epi(incl, ba_or, ba_oa, cat_oa));

    EpiComponent e = natural_epi_component(incl, chain3, ba_or, ba_oa);
    s.take(e.report);
    s.note(e.full_reflection.theta.same(1, 2) && !e.full_reflection.theta.same(0, 1),
           "reflecting the three-chain collapses the designated pair onto the top");
    bool iso = e.domain.size() == e.codomain.size() && static_cast<int>(e.map.size()) ==
                                                           e.domain.size();
    if (iso) {
        std::vector<int> seen(static_cast<std::size_t>(e.codomain.size()), 0);
        for (int v : e.map)
            seen[static_cast<std::size_t>(v)] += 1;
        for (int c : seen)
            iso = iso && c == 1;
    }
    s.note(iso, "the comparison component on the three-chain is a bijection");
    return s;
}

inline SuiteOutcome roundtrip() {
    SuiteOutcome s;
    s.name = "roundtrip";
    s.statement = "extracting a translation back from the induced reduct functor recovers "
                  "the original schemas up to interderivability";
    FlexMorphism t = catalogs::t_imp_to_or();
    FlexMorphism tp = catalogs::t_or_to_imp();
    s.take(roundtrip_check(FlexMorphism::identity(catalogs::sig_neg_or()), catalogs::cpl_or()));
    s.take(roundtrip_check(t, catalogs::cpl_or()));
    s.take(roundtrip_check(tp, catalogs::cpl_imp()));
    s.take(roundtrip_check(compose(tp, t), catalogs::cpl_imp()));
    s.take(roundtrip_check(catalogs::incl_or_to_orand(), catalogs::cpl_or_and()));

    s.take(morphisms_equivalent(catalogs::cpl_imp(), catalogs::cpl_or(), t,
                                catalogs::t_imp_to_or_variant(), CheckBounds{2, 3, 2}));
    FiniteAlgebra b4 = catalogs::powerset_algebra(catalogs::sig_neg_or(), 2);
    s.note(same_operation_tables(reduct(t, b4), reduct(catalogs::t_imp_to_or_variant(), b4)),
           "interderivable schemas induce identical reducts on the four-element algebra");
    return s;
}

inline SuiteOutcome glivenko() {
    SuiteOutcome s;
    s.name = "glivenko";
    s.statement = "double-negation stabilization reflects every finite Heyting algebra "
                  "onto a Boolean quotient, is adjoint to the inclusion, and matches the "
                  "prover-level double-negation transfer";
    auto has = catalogs::heyting_catalog();
    s.take(check_glivenko(has));
    s.take(check_glivenko_adjunction(
        has, catalogs::powerset_catalog(catalogs::sig_heyting(), {1, 2, 4})));

    Logic c = catalogs::cpl_full();
    Logic i = catalogs::ipc();
    Report taut("double-negation transfer", "20 classical tautologies");
    for (const Formula& f : catalogs::classical_tautologies()) {
        Formula dn = Formula::app("neg", {Formula::app("neg", {f})});
        bool cls = entails(c, {}, f) == Verdict::True;
        bool intu = entails(i, {}, dn) == Verdict::True;
        if (cls && intu)
            taut.pass(to_string(f));
        else
            taut.fail(to_string(f), cls ? "double negation not intuitionistically provable"
                                        : "not a classical tautology");
    }
    if (entails(i, {}, catalogs::peirce()) == Verdict::False)
        taut.pass("Peirce's law stays unprovable intuitionistically");
    else
        taut.fail("Peirce's law stays unprovable intuitionistically", "prover disagrees");
    s.take(std::move(taut));
    return s;
}

inline SuiteOutcome full_faithful() {
    SuiteOutcome s;
    s.name = "full-faithful";
    s.statement = "the identity presentation is full and faithful on Boolean catalogs, "
                  "while the negation-only reduct admits maps that no Boolean homomorphism "
                  "induces";
    auto cat = catalogs::powerset_catalog(catalogs::sig_neg_or(), {1, 2, 4, 8});
    s.take(check_full_faithful(FlexMorphism::identity(catalogs::sig_neg_or()), cat));

    s.take(check_full_faithful(catalogs::incl_neg_to_or(), cat), false);
    FiniteAlgebra b4 = catalogs::powerset_algebra(catalogs::sig_neg_or(), 2);
    FiniteAlgebra b2 = catalogs::powerset_algebra(catalogs::sig_neg_or(), 1);
    FlexMorphism n = catalogs::incl_neg_to_or();
    auto red_homs = enumerate_homs(reduct(n, b4), reduct(n, b2));
    auto full_homs = enumerate_homs(b4, b2);
    s.note(red_homs.size() == 4 && full_homs.size() == 2,
           "the four-to-two pair has 4 negation-only maps but only 2 Boolean "
           "homomorphisms");
    return s;
}

inline SuiteOutcome quotient_logic() {
    SuiteOutcome s;
    s.name = "quotient-logic";
    s.statement = "factoring the classical interdefinition through a dense conservative "
                  "base yields a quotient presentation whose induced logic still collapses "
                  "interderivability";
    QuotientLogicResult q = construct_quotient_logic(
        catalogs::cpl_imp(), catalogs::cpl_or(), catalogs::cpl_or(), catalogs::t_imp_to_or(),
        FlexMorphism::identity(catalogs::sig_neg_or()), catalogs::cpl_pair(),
        CheckBounds{2, 3, 2});
    s.take(q.report);
    s.note(q.a.has_value(), "the quotient logic carries a decidable oracle");
    s.note(q.pair.has_value(), "the delta/epsilon/equivalence system transports along the "
                               "embedding");
    s.note(q.f.is_strict(), "the projection onto the quotient signature is strict");
    return s;
}

inline SuiteOutcome negative_controls() {
    SuiteOutcome s;
    s.name = "negative-controls";
    s.statement = "engineered counterexamples fail exactly where they should: every "
                  "negative control below is expected to fail";
    const CheckBounds b{2, 3, 2};
    s.take(check_congruential(catalogs::noncongruential_logic(), b), false);
    s.take(check_bp_conditions(catalogs::cpl_or(), catalogs::ba_or_laws(),
                               catalogs::cpl_mutant_pair(), CheckBounds{2, 2, 2}),
           false);
    s.take(check_full_faithful(catalogs::incl_neg_to_or(),
                               catalogs::powerset_catalog(catalogs::sig_neg_or(), {1, 2, 4})),
           false);

    Signature so = catalogs::sig_neg_or(), si = catalogs::sig_neg_imp();
    std::map<std::string, Formula> broken_schemas{
        {"neg", parse_formula("neg(x0)", si)},
        {"or", parse_formula("x0", si)},
    };
    FlexMorphism broken = FlexMorphism::flexible(so, si, std::move(broken_schemas),
                                                 "broken-backward");
    MoritaWitness w{catalogs::t_imp_to_or(),
                    broken,
                    catalogs::ba_imp_laws(),
                    catalogs::ba_or_laws(),
                    catalogs::powerset_catalog(si, {1, 2, 4}),
                    catalogs::powerset_catalog(so, {1, 2, 4})};
    s.take(check_stable_morita(w), false);

    std::map<std::string, Formula> drop_schemas{
        {"neg", parse_formula("neg(x0)", so)},
        {"or", parse_formula("x0", so)},
    };
    FlexMorphism drop = FlexMorphism::flexible(so, so, std::move(drop_schemas),
                                               "first-projection");
    s.take(check_qv_restriction(drop, catalogs::ba_or_laws(), catalogs::ba_or_laws(),
                                catalogs::powerset_catalog(so, {1, 2, 4})),
           false);

    for (const auto& m : enumerate_strict_morphisms(so, si))
        s.take(check_conservative(catalogs::cpl_or(), catalogs::cpl_imp(), m, b), false);
    return s;
}

// ---- registry ----

inline std::vector<std::string> suite_names() {
    return {"classical-morita", "no-strict-iso",  "reflector",     "free-lindenbaum",
            "bp-conditions",    "reduct-restriction", "roundtrip", "glivenko",
            "full-faithful",    "quotient-logic", "negative-controls"};
}

inline SuiteOutcome run_suite(const std::string& name) {
    if (name == "classical-morita")
        return classical_morita();
    if (name == "no-strict-iso")
        return no_strict_iso();
    if (name == "reflector")
        return reflector();
    if (name == "free-lindenbaum")
        return free_lindenbaum();
    if (name == "bp-conditions")
        return bp_conditions();
    if (name == "reduct-restriction")
        return reduct_restriction();
    if (name == "roundtrip")
        return roundtrip();
    if (name == "glivenko")
        return glivenko();
    if (name == "full-faithful")
        return full_faithful();
    if (name == "quotient-logic")
        return quotient_logic();
    if (name == "negative-controls")
        return negative_controls();
    throw Error("unknown suite '" + name + "'");
}

inline std::vector<SuiteOutcome> acceptance() {
    std::vector<SuiteOutcome> out;
    for (const std::string& n : suite_names())
        if (n != "negative-controls")
            out.push_back(run_suite(n));
    return out;
}

} // namespace lwb::suites
