#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "lwb/algebraization.hpp"
#include "lwb/consequence.hpp"
#include "lwb/ipc.hpp"
#include "lwb/parse.hpp"
#include "lwb/quasivariety.hpp"

// Bundled signatures, algebras, law sets, logics and morphisms used by the
// demo suites and the command-line tool.
namespace lwb::catalogs {

inline Signature sig_neg() { return Signature("neg", {{1, {"neg"}}}); }
inline Signature sig_neg_or() { return Signature("neg-or", {{1, {"neg"}}, {2, {"or"}}}); }
inline Signature sig_neg_imp() { return Signature("neg-imp", {{1, {"neg"}}, {2, {"imp"}}}); }
inline Signature sig_neg_or_and() {
    return Signature("neg-or-and", {{1, {"neg"}}, {2, {"or", "and"}}});
}
inline Signature sig_heyting() {
    return Signature("heyting", {{1, {"neg"}}, {2, {"and", "or", "imp"}}});
}

// Power-set algebra on the given number of atoms; elements are bit masks,
// operations are the set-theoretic ones.  Only neg/or/and/imp are known.
inline FiniteAlgebra powerset_algebra(const Signature& sig, int atoms) {
    if (atoms < 0 || atoms > 16)
        throw Error("powerset_algebra: atom count out of range");
    const int n = 1 << atoms;
    const int full = n - 1;
    std::map<std::string, std::vector<int>> tables;
    for (const auto& [arity, names] : sig.conns()) {
        for (const auto& c : names) {
            std::vector<int> tbl;
            if (c == "neg" && arity == 1) {
                for (int x = 0; x < n; ++x)
                    tbl.push_back(~x & full);
            } else if (arity == 2 && (c == "or" || c == "and" || c == "imp")) {
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y) {
                        if (c == "or")
                            tbl.push_back(x | y);
                        else if (c == "and")
                            tbl.push_back(x & y);
                        else
                            tbl.push_back((~x & full) | y);
                    }
            } else {
                throw Error("powerset_algebra: unsupported connective " + c);
            }
            tables.emplace(c, std::move(tbl));
        }
    }
    return FiniteAlgebra(sig, n, std::move(tables),
                         "B" + std::to_string(n) + "@" + sig.name());
}

inline std::vector<FiniteAlgebra> powerset_catalog(const Signature& sig,
                                                   const std::vector<int>& sizes) {
    std::vector<FiniteAlgebra> out;
    for (int s : sizes) {
        int atoms = 0;
        while ((1 << atoms) < s)
            ++atoms;
        if ((1 << atoms) != s)
            throw Error("powerset_catalog: size " + std::to_string(s) + " is not a power of 2");
        out.push_back(powerset_algebra(sig, atoms));
    }
    return out;
}

// ---- laws ----

inline QuasivarietySpec ba_or_laws() {
    Signature sig = sig_neg_or();
    std::vector<QuasiIdentity> laws = parse_laws(
        {
            "or(x0,x1) = or(x1,x0)",
            "or(or(x0,x1),x2) = or(x0,or(x1,x2))",
            "or(neg(or(neg(x0),x1)),neg(or(neg(x0),neg(x1)))) = x0",
            "or(x0,neg(x0)) = or(x1,neg(x1))",
        },
        sig);
    return QuasivarietySpec("BA(neg,or)", sig, std::move(laws), {powerset_algebra(sig, 1)});
}

inline QuasivarietySpec ba_imp_laws() {
    Signature sig = sig_neg_imp();
    std::vector<QuasiIdentity> laws = parse_laws(
        {
            "imp(neg(x0),x1) = imp(neg(x1),x0)",
            "imp(neg(imp(neg(x0),x1)),x2) = imp(neg(x0),imp(neg(x1),x2))",
            "imp(neg(neg(imp(neg(neg(x0)),x1))),neg(imp(neg(neg(x0)),neg(x1)))) = x0",
            "imp(neg(neg(x0)),x1) = imp(x0,x1)",
        },
        sig);
    return QuasivarietySpec("BA(neg,imp)", sig, std::move(laws), {powerset_algebra(sig, 1)});
}

inline QuasivarietySpec ba_or_and_laws() {
    Signature sig = sig_neg_or_and();
    std::vector<QuasiIdentity> laws = parse_laws(
        {
            "or(x0,x1) = or(x1,x0)",
            "or(or(x0,x1),x2) = or(x0,or(x1,x2))",
            "or(neg(or(neg(x0),x1)),neg(or(neg(x0),neg(x1)))) = x0",
            "and(x0,x1) = neg(or(neg(x0),neg(x1)))",
        },
        sig);
    return QuasivarietySpec("BA(neg,or,and)", sig, std::move(laws), {powerset_algebra(sig, 1)});
}

inline std::vector<std::string> heyting_law_texts() {
    return {
        "and(x0,x1) = and(x1,x0)",
        "and(and(x0,x1),x2) = and(x0,and(x1,x2))",
        "or(x0,x1) = or(x1,x0)",
        "or(or(x0,x1),x2) = or(x0,or(x1,x2))",
        "and(x0,or(x0,x1)) = x0",
        "or(x0,and(x0,x1)) = x0",
        "and(imp(x0,x1),x1) = x1",
        "and(x0,imp(x0,x1)) = and(x0,x1)",
        "imp(x0,and(x1,x2)) = and(imp(x0,x1),imp(x0,x2))",
        "imp(or(x0,x1),x2) = and(imp(x0,x2),imp(x1,x2))",
        "imp(x0,x0) = imp(x1,x1)",
        "and(x1,imp(x0,x0)) = x1",
        "or(x1,neg(imp(x0,x0))) = x1",
        "neg(x0) = imp(x0,neg(imp(x1,x1)))",
    };
}

inline QuasivarietySpec ha_laws() {
    Signature sig = sig_heyting();
    return QuasivarietySpec::from_laws("HA", sig, parse_laws(heyting_law_texts(), sig));
}

inline QuasivarietySpec ba_full_laws() {
    Signature sig = sig_heyting();
    std::vector<std::string> texts = heyting_law_texts();
    texts.push_back("or(x0,neg(x0)) = imp(x1,x1)");
    return QuasivarietySpec("BA(full)", sig, parse_laws(texts, sig),
                            {powerset_algebra(sig, 1)});
}

// ---- Heyting algebras beyond chains ----

namespace detail {

// Build a Heyting algebra with the given order: meets and joins are the
// lattice bounds, implication is the relative pseudo-complement.
inline FiniteAlgebra ha_from_order(const std::string& name, int n,
                                   const std::function<bool(int, int)>& leq) {
    auto glb = [&](int x, int y) {
        for (int z = n - 1; z >= 0; --z) {
            if (!leq(z, x) || !leq(z, y))
                continue;
            bool greatest = true;
            for (int w = 0; w < n && greatest; ++w)
                if (leq(w, x) && leq(w, y) && !leq(w, z))
                    greatest = false;
            if (greatest)
                return z;
        }
        throw Error("ha_from_order: " + name + " has no meet for " + std::to_string(x) + "," +
                    std::to_string(y));
    };
    auto lub = [&](int x, int y) {
        for (int z = 0; z < n; ++z) {
            if (!leq(x, z) || !leq(y, z))
                continue;
            bool least = true;
            for (int w = 0; w < n && least; ++w)
                if (leq(x, w) && leq(y, w) && !leq(z, w))
                    least = false;
            if (least)
                return z;
        }
        throw Error("ha_from_order: " + name + " has no join for " + std::to_string(x) + "," +
                    std::to_string(y));
    };
    int bot = -1;
    for (int x = 0; x < n; ++x) {
        bool least = true;
        for (int y = 0; y < n; ++y)
            least = least && leq(x, y);
        if (least)
            bot = x;
    }
    if (bot < 0)
        throw Error("ha_from_order: " + name + " has no bottom");
    std::vector<int> and_t, or_t, imp_t, neg_t;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            and_t.push_back(glb(x, y));
            or_t.push_back(lub(x, y));
        }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            // greatest z with z meet x below y
            int best = -1;
            for (int z = 0; z < n; ++z) {
                if (!leq(and_t[static_cast<std::size_t>(z * n + x)], y))
                    continue;
                if (best < 0 || leq(best, z))
                    best = z;
            }
            if (best < 0)
                throw Error("ha_from_order: " + name + " has no implication for " +
                            std::to_string(x) + "," + std::to_string(y));
            // the candidate set must have a maximum, not just maximal elements
            for (int z = 0; z < n; ++z)
                if (leq(and_t[static_cast<std::size_t>(z * n + x)], y) && !leq(z, best))
                    throw Error("ha_from_order: " + name + " is not residuated at " +
                                std::to_string(x) + "," + std::to_string(y));
            imp_t.push_back(best);
        }
    for (int x = 0; x < n; ++x)
        neg_t.push_back(imp_t[static_cast<std::size_t>(x * n + bot)]);
    std::map<std::string, std::vector<int>> tables{
        {"and", std::move(and_t)}, {"or", std::move(or_t)}, {"imp", std::move(imp_t)},
        {"neg", std::move(neg_t)}};
    return FiniteAlgebra(sig_heyting(), n, std::move(tables), name);
}

} // namespace detail

inline FiniteAlgebra heyting_chain_algebra(int k) { return heyting_chain(sig_heyting(), k); }

// the four-element Boolean diamond viewed as a Heyting algebra
inline FiniteAlgebra diamond_ha() {
    return detail::ha_from_order("diamond", 4,
                                 [](int x, int y) { return (x & ~y & 3) == 0; });
}

// diamond with a new top added above it
inline FiniteAlgebra diamond_top_ha() {
    return detail::ha_from_order("diamond-top", 5, [](int x, int y) {
        if (y == 4)
            return true;
        if (x == 4)
            return false;
        return (x & ~y & 3) == 0;
    });
}

// diamond with a new bottom added below it
inline FiniteAlgebra bottom_diamond_ha() {
    return detail::ha_from_order("bottom-diamond", 5, [](int x, int y) {
        if (x == 0)
            return true;
        if (y == 0)
            return false;
        return ((x - 1) & ~(y - 1) & 3) == 0;
    });
}

// product of a two-chain and a three-chain
inline FiniteAlgebra grid_ha() {
    return detail::ha_from_order("grid2x3", 6, [](int x, int y) {
        return x / 3 <= y / 3 && x % 3 <= y % 3;
    });
}

inline std::vector<FiniteAlgebra> heyting_catalog() {
    std::vector<FiniteAlgebra> out;
    for (int k = 1; k <= 5; ++k)
        out.push_back(heyting_chain_algebra(k));
    out.push_back(diamond_ha());
    out.push_back(diamond_top_ha());
    out.push_back(bottom_diamond_ha());
    out.push_back(grid_ha());
    return out;
}

// ---- logics ----

inline Logic classical_logic(const Signature& sig, const std::string& name) {
    FiniteAlgebra two = powerset_algebra(sig, 1);
    std::vector<LogicalMatrix> family;
    family.emplace_back(std::move(two), std::vector<int>{1}, "two-valued");
    return Logic(name, sig, std::make_shared<MatrixFamilyOracle>(sig, std::move(family)));
}

inline Logic cpl_or() { return classical_logic(sig_neg_or(), "CPL(neg,or)"); }
inline Logic cpl_imp() { return classical_logic(sig_neg_imp(), "CPL(neg,imp)"); }
inline Logic cpl_or_and() { return classical_logic(sig_neg_or_and(), "CPL(neg,or,and)"); }
inline Logic cpl_full() { return classical_logic(sig_heyting(), "CPL(full)"); }
inline Logic cpl_neg() { return classical_logic(sig_neg(), "CPL(neg)"); }

inline Logic ipc() {
    Signature sig = sig_heyting();
    return Logic("IPC", sig, std::make_shared<IpcOracle>(sig));
}

// Three-valued matrix whose interderivability relation is not compatible
// with negation; used as a negative control.
inline Logic noncongruential_logic() {
    Signature sig = sig_neg_or();
    std::map<std::string, std::vector<int>> tables{
        {"neg", {0, 2, 0}},
        {"or", {0, 1, 2, 1, 1, 2, 2, 2, 2}},
    };
    FiniteAlgebra alg(sig, 3, std::move(tables), "mutant3");
    std::vector<LogicalMatrix> family;
    family.emplace_back(std::move(alg), std::vector<int>{1, 2}, "mutant3");
    return Logic("three-valued mutant", sig, std::make_shared<MatrixFamilyOracle>(sig, std::move(family)));
}

// ---- morphisms ----

inline FlexMorphism t_imp_to_or() {
    Signature src = sig_neg_imp(), tgt = sig_neg_or();
    std::map<std::string, Formula> schemas{
        {"neg", parse_formula("neg(x0)", tgt)},
        {"imp", parse_formula("or(neg(x0),x1)", tgt)},
    };
    return FlexMorphism::flexible(src, tgt, std::move(schemas), "t");
}

inline FlexMorphism t_or_to_imp() {
    Signature src = sig_neg_or(), tgt = sig_neg_imp();
    std::map<std::string, Formula> schemas{
        {"neg", parse_formula("neg(x0)", tgt)},
        {"or", parse_formula("imp(neg(x0),x1)", tgt)},
    };
    return FlexMorphism::flexible(src, tgt, std::move(schemas), "t'");
}

// variant of t with a doubly negated implication schema; same class as t
inline FlexMorphism t_imp_to_or_variant() {
    Signature src = sig_neg_imp(), tgt = sig_neg_or();
    std::map<std::string, Formula> schemas{
        {"neg", parse_formula("neg(x0)", tgt)},
        {"imp", parse_formula("neg(neg(or(neg(x0),x1)))", tgt)},
    };
    return FlexMorphism::flexible(src, tgt, std::move(schemas), "t-variant");
}

inline FlexMorphism incl_or_to_orand() {
    return FlexMorphism::strict(sig_neg_or(), sig_neg_or_and(),
                                {{"neg", "neg"}, {"or", "or"}}, "inclusion");
}

inline FlexMorphism incl_neg_to_or() {
    return FlexMorphism::strict(sig_neg(), sig_neg_or(), {{"neg", "neg"}}, "neg-inclusion");
}

// ---- algebraizing pairs ----

inline AlgebraizingPair cpl_pair() {
    return AlgebraizingPair::parse(
        "delta = [x0]; epsilon = [or(x0,neg(x0))]; Delta = [or(neg(x0),x1), or(neg(x1),x0)]",
        sig_neg_or());
}

// half of the equivalence set: detects failures of the symmetric round trip
inline AlgebraizingPair cpl_mutant_pair() {
    return AlgebraizingPair::parse(
        "delta = [x0]; epsilon = [or(x0,neg(x0))]; Delta = [or(neg(x0),x1)]", sig_neg_or());
}

inline AlgebraizingPair ipc_pair() {
    return AlgebraizingPair::parse(
        "delta = [x0]; epsilon = [imp(x0,x0)]; Delta = [imp(x0,x1), imp(x1,x0)]",
        sig_heyting());
}

// ---- formulas ----

inline std::vector<Formula> classical_tautologies() {
    Signature sig = sig_heyting();
    std::vector<std::string> texts{
        "or(x0,neg(x0))",
        "imp(neg(neg(x0)),x0)",
        "imp(imp(imp(x0,x1),x0),x0)",
        "imp(x0,imp(x1,x0))",
        "imp(imp(x0,imp(x1,x2)),imp(imp(x0,x1),imp(x0,x2)))",
        "imp(imp(neg(x0),neg(x1)),imp(x1,x0))",
        "or(imp(x0,x1),imp(x1,x0))",
        "imp(neg(and(x0,x1)),or(neg(x0),neg(x1)))",
        "imp(or(neg(x0),neg(x1)),neg(and(x0,x1)))",
        "imp(neg(or(x0,x1)),and(neg(x0),neg(x1)))",
        "imp(and(neg(x0),neg(x1)),neg(or(x0,x1)))",
        "imp(imp(x0,x1),or(neg(x0),x1))",
        "imp(or(neg(x0),x1),imp(x0,x1))",
        "imp(and(x0,x1),x0)",
        "imp(x0,or(x0,x1))",
        "imp(and(x0,imp(x0,x1)),x1)",
        "imp(and(imp(x0,x1),imp(x1,x2)),imp(x0,x2))",
        "imp(x0,x0)",
        "or(x0,imp(x0,x1))",
        "imp(imp(or(x0,x1),x0),or(x0,neg(x1)))",
    };
    std::vector<Formula> out;
    out.reserve(texts.size());
    for (const auto& t : texts)
        out.push_back(parse_formula(t, sig));
    return out;
}

inline Formula peirce() {
    return parse_formula("imp(imp(imp(x0,x1),x0),x0)", sig_heyting());
}

} // namespace lwb::catalogs
