#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "lwb/consequence.hpp"
#include "lwb/parse.hpp"

namespace lwb {
namespace detail {

inline bool is_app(const Formula& f, const char* c) { return !f.is_var() && f.conn() == c; }

inline Formula mk_imp(const Formula& a, const Formula& b) { return Formula::app("imp", {a, b}); }

// Contraction-free sequent search for intuitionistic propositional logic
// over and/or/imp/bot.  Terminating: every recursion strictly reduces the
// standard weight of the sequent, so no loop checking is needed.
class IpcProver {
public:
    bool prove(std::vector<Formula> ctx, Formula goal) {
        std::string key = make_key(ctx, goal);
        auto it = cache_.find(key);
        if (it != cache_.end())
            return it->second;
        bool res = search(std::move(ctx), std::move(goal));
        cache_.emplace(std::move(key), res);
        return res;
    }

private:
    static std::vector<Formula> without(const std::vector<Formula>& ctx, std::size_t i) {
        std::vector<Formula> out;
        out.reserve(ctx.size() - 1);
        for (std::size_t j = 0; j < ctx.size(); ++j)
            if (j != i)
                out.push_back(ctx[j]);
        return out;
    }

    static std::string make_key(const std::vector<Formula>& ctx, const Formula& goal) {
        std::vector<std::string> parts;
        parts.reserve(ctx.size());
        for (const auto& f : ctx)
            parts.push_back(to_string(f));
        std::sort(parts.begin(), parts.end());
        parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
        std::string key;
        for (const auto& p : parts) {
            key += p;
            key += '|';
        }
        key += ">";
        key += to_string(goal);
        return key;
    }

    bool search(std::vector<Formula> ctx, Formula goal) {
        for (;;) {
            for (const auto& f : ctx) {
                if (is_app(f, "bot"))
                    return true;
                if (f == goal)
                    return true;
            }
            // invertible, non-branching left rules
            bool changed = false;
            for (std::size_t i = 0; i < ctx.size() && !changed; ++i) {
                const Formula f = ctx[i];
                if (is_app(f, "and")) {
                    ctx.erase(ctx.begin() + static_cast<std::ptrdiff_t>(i));
                    ctx.push_back(f.args()[0]);
                    ctx.push_back(f.args()[1]);
                    changed = true;
                } else if (is_app(f, "imp")) {
                    const Formula& a = f.args()[0];
                    const Formula& b = f.args()[1];
                    if (is_app(a, "bot")) {
                        ctx.erase(ctx.begin() + static_cast<std::ptrdiff_t>(i));
                        changed = true;
                    } else if (a.is_var()) {
                        // fires only once the atom is present
                        for (const auto& g : ctx) {
                            if (g == a) {
                                ctx.erase(ctx.begin() + static_cast<std::ptrdiff_t>(i));
                                ctx.push_back(b);
                                changed = true;
                                break;
                            }
                        }
                    } else if (is_app(a, "and")) {
                        ctx[i] = mk_imp(a.args()[0], mk_imp(a.args()[1], b));
                        changed = true;
                    } else if (is_app(a, "or")) {
                        ctx[i] = mk_imp(a.args()[0], b);
                        ctx.push_back(mk_imp(a.args()[1], b));
                        changed = true;
                    }
                }
            }
            if (changed)
                continue;
            // invertible right rules
            if (is_app(goal, "imp")) {
                ctx.push_back(goal.args()[0]);
                goal = goal.args()[1];
                continue;
            }
            if (is_app(goal, "and"))
                return prove(ctx, goal.args()[0]) && prove(ctx, goal.args()[1]);
            // invertible but branching: case split on a disjunction
            for (std::size_t i = 0; i < ctx.size(); ++i) {
                if (is_app(ctx[i], "or")) {
                    const Formula f = ctx[i];
                    std::vector<Formula> left = without(ctx, i);
                    std::vector<Formula> right = left;
                    left.push_back(f.args()[0]);
                    right.push_back(f.args()[1]);
                    return prove(std::move(left), goal) && prove(std::move(right), goal);
                }
            }
            // non-invertible choices
            if (is_app(goal, "or")) {
                if (prove(ctx, goal.args()[0]))
                    return true;
                if (prove(ctx, goal.args()[1]))
                    return true;
            }
            for (std::size_t i = 0; i < ctx.size(); ++i) {
                const Formula& f = ctx[i];
                if (is_app(f, "imp") && is_app(f.args()[0], "imp")) {
                    const Formula& cd = f.args()[0];
                    const Formula& b = f.args()[1];
                    std::vector<Formula> first = without(ctx, i);
                    first.push_back(mk_imp(cd.args()[1], b));
                    std::vector<Formula> second = without(ctx, i);
                    second.push_back(b);
                    if (prove(std::move(first), cd) && prove(std::move(second), goal))
                        return true;
                }
            }
            return false;
        }
    }

    std::unordered_map<std::string, bool> cache_;
};

} // namespace detail

// chain Heyting algebra 0 < 1 < ... < k-1 over the given signature
inline FiniteAlgebra heyting_chain(const Signature& sig, int k) {
    std::map<std::string, std::vector<int>> tables;
    const int top = k - 1;
    auto imp_of = [&](int x, int y) { return x <= y ? top : y; };
    for (const auto& [arity, names] : sig.conns()) {
        for (const auto& c : names) {
            if (c == "and" || c == "or") {
                std::vector<int> t(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
                for (int x = 0; x < k; ++x)
                    for (int y = 0; y < k; ++y)
                        t[static_cast<std::size_t>(x * k + y)] =
                            c == "and" ? std::min(x, y) : std::max(x, y);
                tables.emplace(c, std::move(t));
            } else if (c == "imp") {
                std::vector<int> t(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
                for (int x = 0; x < k; ++x)
                    for (int y = 0; y < k; ++y)
                        t[static_cast<std::size_t>(x * k + y)] = imp_of(x, y);
                tables.emplace(c, std::move(t));
            } else if (c == "neg") {
                std::vector<int> t(static_cast<std::size_t>(k));
                for (int x = 0; x < k; ++x)
                    t[static_cast<std::size_t>(x)] = imp_of(x, 0);
                tables.emplace(c, std::move(t));
            } else if (c == "bot") {
                tables.emplace(c, std::vector<int>{0});
            } else {
                throw Error("heyting_chain: unsupported connective " + c);
            }
        }
    }
    return FiniteAlgebra(sig, k, std::move(tables), "chain" + std::to_string(k));
}

// Decision procedure for intuitionistic propositional consequence.  Accepts
// the signature shapes and/or/imp plus neg, bot, or both; negation is read
// as implication into bottom.
class IpcOracle : public ConsequenceOracle {
public:
    explicit IpcOracle(Signature sig) : sig_(std::move(sig)) {
        auto need_binary = [&](const char* c) {
            if (!sig_.contains(c) || sig_.arity_of(c) != 2)
                throw Error(std::string("intuitionistic oracle: signature must have binary ") +
                            c);
        };
        need_binary("and");
        need_binary("or");
        need_binary("imp");
        has_neg_ = sig_.contains("neg");
        bool has_bot = sig_.contains("bot");
        if (has_neg_ && sig_.arity_of("neg") != 1)
            throw Error("intuitionistic oracle: neg must be unary");
        if (has_bot && sig_.arity_of("bot") != 0)
            throw Error("intuitionistic oracle: bot must have arity 0");
        if (!has_neg_ && !has_bot)
            throw Error("intuitionistic oracle: signature needs neg or bot");
        for (const auto& [arity, names] : sig_.conns())
            for (const auto& c : names)
                if (c != "and" && c != "or" && c != "imp" && c != "neg" && c != "bot")
                    throw Error("intuitionistic oracle: unsupported connective " + c);
        for (int k = 2; k <= 4; ++k)
            refuters_.emplace_back(heyting_chain(sig_, k), std::vector<int>{k - 1});
    }

    const Signature& sig() const override { return sig_; }
    bool exact() const override { return true; }
    std::string describe() const override { return "intuitionistic sequent prover"; }

    Verdict entails(const std::vector<Formula>& premises,
                    const Formula& conclusion) const override {
        return proves(premises, conclusion) ? Verdict::True : Verdict::False;
    }

    bool proves(const std::vector<Formula>& premises, const Formula& conclusion) const {
        // cheap countermodel scan before full proof search
        int nv = conclusion.var_span();
        for (const auto& p : premises)
            nv = std::max(nv, p.var_span());
        FamilyEval& fe = refuter_for(nv);
        Mask hyp = mask_ones(fe.width());
        for (const auto& p : premises)
            mask_and_inplace(hyp, fe.des_mask(fe.eval(p)));
        if (!mask_subset(hyp, fe.des_mask(fe.eval(conclusion))))
            return false;
        std::vector<Formula> ctx;
        ctx.reserve(premises.size());
        for (const auto& p : premises)
            ctx.push_back(normalize(p));
        return prover_.prove(std::move(ctx), normalize(conclusion));
    }

    bool has_fingerprint() const override { return true; }
    bool fingerprint_complete() const override { return false; }

    // values over small Heyting algebras; equal values are necessary but not
    // sufficient for interderivability
    std::vector<int> fingerprint(const Formula& f, int nvars) const override {
        FamilyEval& fe = refuter_for(nvars);
        return fe.eval(f);
    }

private:
    Formula normalize(const Formula& f) const {
        if (f.is_var())
            return f;
        std::vector<Formula> args;
        args.reserve(f.args().size());
        for (const auto& a : f.args())
            args.push_back(normalize(a));
        if (f.conn() == "neg")
            return detail::mk_imp(args[0], Formula::app("bot", {}));
        return Formula::app(f.conn(), args);
    }

    FamilyEval& refuter_for(int nvars) const {
        auto it = fp_evals_.find(nvars);
        if (it == fp_evals_.end())
            it = fp_evals_.emplace(nvars, FamilyEval(refuters_, nvars)).first;
        return it->second;
    }

    Signature sig_;
    bool has_neg_ = false;
    std::vector<LogicalMatrix> refuters_;
    mutable detail::IpcProver prover_;
    mutable std::map<int, FamilyEval> fp_evals_;
};

} // namespace lwb
