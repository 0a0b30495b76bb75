#pragma once

#include <map>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "lwb/enumerate.hpp"
#include "lwb/valuations.hpp"

namespace lwb {

enum class Verdict { True, False, Unknown };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::True:
        return "true";
    case Verdict::False:
        return "false";
    default:
        return "unknown";
    }
}

class ConsequenceOracle {
public:
    virtual ~ConsequenceOracle() = default;
    virtual const Signature& sig() const = 0;
    virtual Verdict entails(const std::vector<Formula>& premises,
                            const Formula& conclusion) const = 0;
    virtual bool exact() const = 0; // never answers unknown
    virtual std::string describe() const = 0;

    // Optional semantic fingerprint: formulas with different fingerprints are
    // never interderivable.  When complete, equal fingerprints coincide with
    // interderivability.
    virtual bool has_fingerprint() const { return false; }
    virtual bool fingerprint_complete() const { return false; }
    virtual std::vector<int> fingerprint(const Formula&, int /*nvars*/) const {
        throw Error("oracle has no semantic fingerprint");
    }
};

// Entailment over a finite family of logical matrices: every valuation into
// every matrix that designates all premises must designate the conclusion.
class MatrixFamilyOracle : public ConsequenceOracle {
public:
    MatrixFamilyOracle(Signature sig, std::vector<LogicalMatrix> family)
        : sig_(std::move(sig)), family_(std::move(family)) {
        if (family_.empty())
            throw Error("matrix family oracle needs at least one matrix");
        for (const auto& m : family_)
            if (!(m.sig() == sig_))
                throw Error("matrix " + m.name() + " does not match the oracle signature");
    }

    const Signature& sig() const override { return sig_; }
    const std::vector<LogicalMatrix>& family() const { return family_; }
    bool exact() const override { return true; }
    std::string describe() const override {
        return "matrix family (" + std::to_string(family_.size()) + " matrices)";
    }

    Verdict entails(const std::vector<Formula>& premises,
                    const Formula& conclusion) const override {
        int nv = conclusion.var_span();
        for (const auto& p : premises)
            nv = std::max(nv, p.var_span());
        FamilyEval& fe = eval_for(nv);
        Mask hyp = mask_ones(fe.width());
        for (const auto& p : premises)
            mask_and_inplace(hyp, fe.des_mask(fe.eval(p)));
        return mask_subset(hyp, fe.des_mask(fe.eval(conclusion))) ? Verdict::True
                                                                  : Verdict::False;
    }

    bool has_fingerprint() const override { return true; }
    bool fingerprint_complete() const override { return true; }

    // designation pattern; two formulas are interderivable iff these agree
    std::vector<int> fingerprint(const Formula& f, int nvars) const override {
        FamilyEval& fe = eval_for(nvars);
        Mask m = fe.des_mask(fe.eval(f));
        std::vector<int> fp(fe.width());
        for (std::size_t c = 0; c < fe.width(); ++c)
            fp[c] = mask_test(m, c) ? 1 : 0;
        return fp;
    }

private:
    FamilyEval& eval_for(int nvars) const {
        auto it = evals_.find(nvars);
        if (it == evals_.end())
            it = evals_.emplace(nvars, FamilyEval(family_, nvars)).first;
        return it->second;
    }

    Signature sig_;
    std::vector<LogicalMatrix> family_;
    mutable std::map<int, FamilyEval> evals_;
};

struct InferenceRule {
    std::string name;
    std::vector<Formula> premises; // patterns; variables are metavariables
    Formula conclusion;
};

namespace detail {

inline bool match_pattern(const Formula& pat, const Formula& f,
                          std::map<int, Formula>& binding) {
    if (pat.is_var()) {
        auto [it, fresh] = binding.emplace(pat.var_index(), f);
        return fresh || it->second == f;
    }
    if (f.is_var() || f.conn() != pat.conn() || f.args().size() != pat.args().size())
        return false;
    for (std::size_t i = 0; i < pat.args().size(); ++i)
        if (!match_pattern(pat.args()[i], f.args()[i], binding))
            return false;
    return true;
}

inline void collect_subformulas(const Formula& f, std::vector<Formula>& out,
                                std::unordered_set<Formula, FormulaHash>& seen) {
    if (!seen.insert(f).second)
        return;
    out.push_back(f);
    for (const Formula& a : f.args())
        collect_subformulas(a, out, seen);
}

} // namespace detail

// Bounded forward-chaining proof search from axiom schemes and rules.
// Sound only: answers true or unknown, never false.
class AxiomSearchOracle : public ConsequenceOracle {
public:
    AxiomSearchOracle(Signature sig, std::vector<Formula> axioms,
                      std::vector<InferenceRule> rules, int instantiation_depth = 1,
                      int rounds = 4)
        : sig_(std::move(sig)), axioms_(std::move(axioms)), rules_(std::move(rules)),
          inst_depth_(instantiation_depth), rounds_(rounds) {
        for (const auto& a : axioms_)
            check_over(a, sig_);
        for (const auto& r : rules_) {
            check_over(r.conclusion, sig_);
            for (const auto& p : r.premises)
                check_over(p, sig_);
        }
    }

    const Signature& sig() const override { return sig_; }
    bool exact() const override { return false; }
    std::string describe() const override {
        return "axiom search (" + std::to_string(axioms_.size()) + " axioms, " +
               std::to_string(rules_.size()) + " rules, " + std::to_string(rounds_) +
               " rounds)";
    }

    Verdict entails(const std::vector<Formula>& premises,
                    const Formula& conclusion) const override {
        int nv = conclusion.var_span();
        for (const auto& p : premises)
            nv = std::max(nv, p.var_span());

        // instantiation universe: subformulas of the query, then small terms
        std::vector<Formula> universe;
        std::unordered_set<Formula, FormulaHash> seen;
        detail::collect_subformulas(conclusion, universe, seen);
        for (const auto& p : premises)
            detail::collect_subformulas(p, universe, seen);
        for (const Formula& f : enumerate_formulas(sig_, std::max(nv, 1), inst_depth_, 100000)) {
            if (universe.size() >= max_universe_)
                break;
            if (seen.insert(f).second)
                universe.push_back(f);
        }

        std::vector<Formula> derived = premises;
        std::unordered_set<Formula, FormulaHash> derived_set(premises.begin(), premises.end());
        auto add = [&](const Formula& f) {
            if (derived_set.size() >= max_derived_)
                return false;
            if (derived_set.insert(f).second)
                derived.push_back(f);
            return true;
        };

        for (const Formula& ax : axioms_) {
            const int mv = ax.var_span();
            std::size_t combos = 1;
            std::size_t usable = universe.size();
            for (int i = 0; i < mv; ++i)
                combos *= usable;
            while (combos > 500000 && usable > 1) { // keep instantiation bounded
                --usable;
                combos = 1;
                for (int i = 0; i < mv; ++i)
                    combos *= usable;
            }
            std::vector<std::size_t> pick(static_cast<std::size_t>(mv), 0);
            while (true) {
                std::map<int, Formula> env;
                for (int i = 0; i < mv; ++i)
                    env.emplace(i, universe[pick[static_cast<std::size_t>(i)]]);
                add(substitute(ax, env));
                int j = mv - 1;
                for (; j >= 0; --j) {
                    if (++pick[static_cast<std::size_t>(j)] < usable)
                        break;
                    pick[static_cast<std::size_t>(j)] = 0;
                }
                if (j < 0)
                    break;
            }
        }

        if (derived_set.count(conclusion))
            return Verdict::True;

        for (int round = 0; round < rounds_; ++round) {
            std::vector<Formula> fresh;
            for (const auto& rule : rules_)
                fire_rule(rule, derived, fresh);
            bool any_new = false;
            for (const auto& f : fresh)
                if (!derived_set.count(f)) {
                    any_new = true;
                    if (!add(f))
                        break;
                }
            if (derived_set.count(conclusion))
                return Verdict::True;
            if (!any_new)
                break;
        }
        return Verdict::Unknown;
    }

private:
    // match rule premises against derived formulas, in order, backtracking
    void fire_rule(const InferenceRule& rule, const std::vector<Formula>& derived,
                   std::vector<Formula>& out) const {
        std::map<int, Formula> binding;
        fire_from(rule, 0, binding, derived, out);
    }

    void fire_from(const InferenceRule& rule, std::size_t at, std::map<int, Formula>& binding,
                   const std::vector<Formula>& derived, std::vector<Formula>& out) const {
        if (at == rule.premises.size()) {
            out.push_back(substitute(rule.conclusion, binding));
            return;
        }
        for (const Formula& cand : derived) {
            std::map<int, Formula> trial = binding;
            if (detail::match_pattern(rule.premises[at], cand, trial))
                fire_from(rule, at + 1, trial, derived, out);
        }
    }

    Signature sig_;
    std::vector<Formula> axioms_;
    std::vector<InferenceRule> rules_;
    int inst_depth_;
    int rounds_;
    std::size_t max_universe_ = 60;
    std::size_t max_derived_ = 20000;
};

struct Logic {
    std::string name;
    Signature sig;
    std::shared_ptr<const ConsequenceOracle> oracle;

    Logic(std::string n, Signature s, std::shared_ptr<const ConsequenceOracle> o)
        : name(std::move(n)), sig(std::move(s)), oracle(std::move(o)) {
        if (!oracle)
            throw Error("logic " + name + ": missing oracle");
        if (!(oracle->sig() == sig))
            throw Error("logic " + name + ": oracle signature differs");
    }
};

inline Verdict entails(const Logic& l, const std::vector<Formula>& premises,
                       const Formula& conclusion) {
    for (const auto& p : premises)
        check_over(p, l.sig);
    check_over(conclusion, l.sig);
    return l.oracle->entails(premises, conclusion);
}

inline bool interderivable(const Logic& l, const Formula& a, const Formula& b) {
    Verdict fwd = l.oracle->entails({a}, b);
    Verdict bwd = l.oracle->entails({b}, a);
    if (fwd == Verdict::Unknown || bwd == Verdict::Unknown)
        throw UnknownVerdict("interderivability of " + to_string(a) + " and " + to_string(b) +
                             " is undecided in " + l.name);
    return fwd == Verdict::True && bwd == Verdict::True;
}

} // namespace lwb
