#include <catch2/catch_amalgamated.hpp>

#include "lwb/lwb.hpp"

using namespace lwb;

namespace {

// Deliberately non-transitive entailment: premises yield themselves and one
// extra negation step, so cut fails.  Used to exercise the structural check.
class CutViolator : public ConsequenceOracle {
public:
    explicit CutViolator(Signature sig) : sig_(std::move(sig)) {}
    const Signature& sig() const override { return sig_; }
    bool exact() const override { return true; }
    std::string describe() const override { return "cut violator"; }

    Verdict entails(const std::vector<Formula>& premises,
                    const Formula& conclusion) const override {
        for (const auto& p : premises) {
            if (p == conclusion)
                return Verdict::True;
            if (!conclusion.is_var() && conclusion.conn() == "neg" &&
                conclusion.args()[0] == p)
                return Verdict::True;
        }
        return Verdict::False;
    }

private:
    Signature sig_;
};

} // namespace

TEST_CASE("matrix family entailment over the two-element Boolean matrix") {
    Logic cpl = catalogs::cpl_or();
    Signature sig = cpl.sig;
    Formula x0 = Formula::var(0);
    CHECK(entails(cpl, {x0}, parse_formula("or(x0,x1)", sig)) == Verdict::True);
    CHECK(entails(cpl, {}, parse_formula("or(x0,neg(x0))", sig)) == Verdict::True);
    CHECK(entails(cpl, {}, x0) == Verdict::False);
    CHECK(entails(cpl, {parse_formula("or(x0,x1)", sig)}, x0) == Verdict::False);
    CHECK(entails(cpl, {parse_formula("neg(neg(x0))", sig)}, x0) == Verdict::True);
    CHECK(cpl.oracle->exact());
    CHECK(cpl.oracle->has_fingerprint());
    CHECK(cpl.oracle->fingerprint_complete());
    // designation pattern over the 2 valuations of x0
    CHECK(cpl.oracle->fingerprint(x0, 1) == std::vector<int>{0, 1});
    CHECK(cpl.oracle->fingerprint(parse_formula("neg(x0)", sig), 1) ==
          std::vector<int>{1, 0});
    CHECK(cpl.oracle->fingerprint(parse_formula("or(x0,neg(x0))", sig), 1) ==
          std::vector<int>{1, 1});
}

TEST_CASE("premises outside the signature are rejected") {
    Logic cpl = catalogs::cpl_or();
    Formula alien = Formula::app("imp", {Formula::var(0), Formula::var(1)});
    CHECK_THROWS_AS(entails(cpl, {alien}, Formula::var(0)), Error);
}

TEST_CASE("structural consequence checks pass for the Boolean matrix") {
    Report r = check_tarskian(catalogs::cpl_or(), CheckBounds{1, 2, 1});
    INFO(r.text());
    CHECK(r.ok());
}

TEST_CASE("cut violations are caught") {
    Signature sig = catalogs::sig_neg_or();
    Logic broken("cut violator", sig, std::make_shared<CutViolator>(sig));
    Report r = check_tarskian(broken, CheckBounds{1, 2, 1});
    INFO(r.text());
    CHECK_FALSE(r.ok());
    bool cut_failed = false;
    for (const auto& e : r.entries())
        if (e.verdict == CheckVerdict::Fail && e.instance.find("cut") != std::string::npos)
            cut_failed = true;
    CHECK(cut_failed);
}

TEST_CASE("axiom search proves instances and reports unknown otherwise") {
    Signature sig = catalogs::sig_neg_imp();
    std::vector<Formula> axioms{
        parse_formula("imp(x0,imp(x1,x0))", sig),
        parse_formula("imp(imp(x0,imp(x1,x2)),imp(imp(x0,x1),imp(x0,x2)))", sig),
    };
    std::vector<InferenceRule> rules{
        {"modus ponens",
         {parse_formula("x0", sig), parse_formula("imp(x0,x1)", sig)},
         parse_formula("x1", sig)},
    };
    AxiomSearchOracle o(sig, axioms, rules);
    CHECK(o.entails({}, parse_formula("imp(x1,imp(x0,x1))", sig)) == Verdict::True);
    CHECK(o.entails({parse_formula("x0", sig), parse_formula("imp(x0,x1)", sig)},
                    parse_formula("x1", sig)) == Verdict::True);
    // derivable only through a longer proof than the budget, or not at all:
    // either way the oracle must not claim False
    CHECK(o.entails({}, parse_formula("imp(x0,x0)", sig)) != Verdict::False);
    CHECK(o.entails({}, parse_formula("x0", sig)) == Verdict::Unknown);
    CHECK_FALSE(o.exact());
    CHECK_FALSE(o.has_fingerprint());
}

TEST_CASE("congruentiality fails for the engineered three-valued matrix") {
    Report good = check_congruential(catalogs::cpl_or(), CheckBounds{2, 2, 2});
    CHECK(good.ok());
    Report bad = check_congruential(catalogs::noncongruential_logic(), CheckBounds{1, 2, 1});
    INFO(bad.text());
    CHECK_FALSE(bad.ok());
}

TEST_CASE("morphism equivalence distinguishes schemas") {
    Logic li = catalogs::cpl_imp();
    Logic lo = catalogs::cpl_or();
    CheckBounds b{2, 2, 2};
    Report same = morphisms_equivalent(li, lo, catalogs::t_imp_to_or(),
                                       catalogs::t_imp_to_or_variant(), b);
    CHECK(same.ok());
    std::map<std::string, Formula> other{
        {"neg", parse_formula("neg(x0)", lo.sig)},
        {"imp", parse_formula("or(x0,x1)", lo.sig)},
    };
    FlexMorphism wrong = FlexMorphism::flexible(li.sig, lo.sig, std::move(other), "wrong");
    Report diff = morphisms_equivalent(li, lo, catalogs::t_imp_to_or(), wrong, b);
    CHECK_FALSE(diff.ok());
}
