#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lwb/checks.hpp"
#include "lwb/quasivariety.hpp"

namespace lwb {

// Interpretation data connecting a logic with a quasivariety: unary term
// lists delta/epsilon turning formulas into equations, and a nonempty list
// of binary equivalence terms turning equations into formulas.
struct AlgebraizingPair {
    std::vector<Formula> delta;
    std::vector<Formula> epsilon;
    std::vector<Formula> equiv; // the "Delta" terms

    void validate(const Signature& sig) const {
        if (delta.empty() || delta.size() != epsilon.size())
            throw Error("algebraizing pair: delta and epsilon must be nonempty and equal length");
        if (equiv.empty())
            throw Error("algebraizing pair: Delta must be nonempty");
        for (const auto& f : delta) {
            check_over(f, sig);
            if (f.var_span() > 1)
                throw Error("algebraizing pair: delta term " + to_string(f) + " must use x0 only");
        }
        for (const auto& f : epsilon) {
            check_over(f, sig);
            if (f.var_span() > 1)
                throw Error("algebraizing pair: epsilon term " + to_string(f) +
                            " must use x0 only");
        }
        for (const auto& f : equiv) {
            check_over(f, sig);
            if (f.var_span() > 2)
                throw Error("algebraizing pair: Delta term " + to_string(f) +
                            " must use x0 and x1 only");
        }
    }

    std::string str() const {
        auto list = [](const std::vector<Formula>& fs) {
            std::string out = "[";
            for (std::size_t i = 0; i < fs.size(); ++i)
                out += (i ? ", " : "") + to_string(fs[i]);
            return out + "]";
        };
        return "delta = " + list(delta) + "; epsilon = " + list(epsilon) +
               "; Delta = " + list(equiv);
    }

    // syntax: delta = [t, ...]; epsilon = [t, ...]; Delta = [t, ...]
    static AlgebraizingPair parse(const std::string& text, const Signature& sig) {
        auto trim = [](std::string s) {
            std::size_t a = s.find_first_not_of(" \t\r\n");
            std::size_t b = s.find_last_not_of(" \t\r\n");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        auto split_top = [](const std::string& s, char sep) {
            std::vector<std::string> parts;
            int depth = 0;
            std::string cur;
            for (char ch : s) {
                if (ch == '(')
                    ++depth;
                if (ch == ')')
                    --depth;
                if (ch == sep && depth == 0) {
                    parts.push_back(cur);
                    cur.clear();
                } else {
                    cur += ch;
                }
            }
            parts.push_back(cur);
            return parts;
        };
        std::map<std::string, std::vector<Formula>> sections;
        for (const std::string& raw : split_top(text, ';')) {
            std::string seg = trim(raw);
            if (seg.empty())
                continue;
            std::size_t eq = seg.find('=');
            if (eq == std::string::npos)
                throw Error("algebraizing pair: expected 'name = [...]' in '" + seg + "'");
            std::string key = trim(seg.substr(0, eq));
            std::string val = trim(seg.substr(eq + 1));
            if (val.size() < 2 || val.front() != '[' || val.back() != ']')
                throw Error("algebraizing pair: section " + key + " needs a [...] list");
            std::vector<Formula> items;
            std::string inner = trim(val.substr(1, val.size() - 2));
            if (!inner.empty())
                for (const std::string& item : split_top(inner, ','))
                    items.push_back(parse_formula(trim(item), sig));
            if (!sections.emplace(key, std::move(items)).second)
                throw Error("algebraizing pair: duplicate section " + key);
        }
        AlgebraizingPair p;
        auto take = [&](const char* key) {
            auto it = sections.find(key);
            if (it == sections.end())
                throw Error(std::string("algebraizing pair: missing section ") + key);
            return it->second;
        };
        p.delta = take("delta");
        p.epsilon = take("epsilon");
        p.equiv = take("Delta");
        if (sections.size() != 3)
            throw Error("algebraizing pair: unexpected extra section");
        p.validate(sig);
        return p;
    }
};

namespace detail {

inline std::vector<LogicalMatrix> generator_matrices(const QuasivarietySpec& qv) {
    std::vector<LogicalMatrix> out;
    for (const auto& g : qv.generators())
        out.emplace_back(g, std::vector<int>{}, g.name());
    return out;
}

// Bounded universe grouped by joint behaviour: designation values in the
// logic plus values over the quasivariety's generators.
struct BpClasses {
    std::vector<Formula> reps;
    std::vector<std::vector<int>> svals; // exact path only
    std::vector<Mask> smask;             // exact path only
    std::vector<std::vector<int>> kvals;
    std::size_t universe = 0;
    bool exact = false;
    bool truncated = false;
};

struct BpContext {
    std::vector<LogicalMatrix> gens;
    std::optional<FamilyEval> sfe; // logic-side values (exact path)
    std::optional<FamilyEval> kfe; // generator-side values
    BpClasses cls;
};

inline BpContext bp_classify(const Logic& l, const QuasivarietySpec& qv,
                             const CheckBounds& b, std::size_t max_reps = 150) {
    BpContext cx;
    cx.gens = generator_matrices(qv);
    cx.kfe.emplace(cx.gens, b.nvars);
    const auto* mo = matrix_oracle(l);
    if (mo) {
        cx.sfe.emplace(mo->family(), b.nvars);
        cx.cls.exact = true;
        std::map<std::pair<std::vector<int>, std::vector<int>>, bool> seen;
        for (const Formula& f : enumerate_formulas(l.sig, b.nvars, b.depth, 500000)) {
            ++cx.cls.universe;
            std::vector<int> sv = cx.sfe->eval(f);
            std::vector<int> kv = cx.kfe->eval(f);
            if (seen.emplace(std::make_pair(sv, kv), true).second) {
                cx.cls.reps.push_back(f);
                cx.cls.smask.push_back(cx.sfe->des_mask(sv));
                cx.cls.svals.push_back(std::move(sv));
                cx.cls.kvals.push_back(std::move(kv));
            }
        }
        return cx;
    }
    std::map<std::pair<std::vector<int>, std::vector<int>>, bool> seen;
    for (const Formula& f : enumerate_formulas(l.sig, b.nvars, b.depth, 500000)) {
        ++cx.cls.universe;
        std::vector<int> fp =
            l.oracle->has_fingerprint() ? l.oracle->fingerprint(f, b.nvars) : std::vector<int>{};
        std::vector<int> kv = cx.kfe->eval(f);
        if (seen.emplace(std::make_pair(fp, kv), true).second) {
            if (cx.cls.reps.size() >= max_reps) {
                cx.cls.truncated = true;
                break;
            }
            cx.cls.reps.push_back(f);
            cx.cls.kvals.push_back(std::move(kv));
        }
    }
    return cx;
}

// coordinates where all of delta(v) = epsilon(v) hold
inline Mask transform_eqmask(const FamilyEval& kfe, const AlgebraizingPair& p,
                             const std::vector<int>& kv) {
    Mask m = mask_ones(kfe.width());
    std::vector<const std::vector<int>*> env{&kv};
    for (std::size_t u = 0; u < p.delta.size(); ++u)
        mask_and_inplace(m, kfe.eq_mask(kfe.eval_env(p.delta[u], env),
                                        kfe.eval_env(p.epsilon[u], env)));
    return m;
}

inline std::vector<Formula> equiv_set(const AlgebraizingPair& p, const Formula& a,
                                      const Formula& b) {
    std::map<int, Formula> env;
    env.emplace(0, a);
    env.emplace(1, b);
    std::vector<Formula> out;
    out.reserve(p.equiv.size());
    for (const auto& d : p.equiv)
        out.push_back(substitute(d, env));
    return out;
}

} // namespace detail

inline void pair_requirements(const Logic& l, const QuasivarietySpec& qv,
                              const AlgebraizingPair& p) {
    p.validate(l.sig);
    if (!(qv.sig() == l.sig))
        throw Error("algebraization: " + qv.name() + " is over a different signature than " +
                    l.name);
    if (!qv.has_generators())
        throw Error("algebraization: " + qv.name() +
                    " needs a Generators presentation for equational consequence");
}

// The four bridge conditions between a logic and a quasivariety under an
// algebraizing pair, checked exhaustively up to the given bounds (up to
// behavioural equivalence of formulas).
inline Report check_bp_conditions(const Logic& l, const QuasivarietySpec& qv,
                                  const AlgebraizingPair& p, const CheckBounds& b = {}) {
    pair_requirements(l, qv, p);
    Report r("algebraization conditions", l.name + " vs " + qv.name() + " " + b.str());
    detail::BpContext cx = detail::bp_classify(l, qv, b);
    const std::size_t n = cx.cls.reps.size();
    r.pass("universe: " + std::to_string(cx.cls.universe) + " formulas, " + std::to_string(n) +
           " behaviour classes" + (cx.cls.truncated ? " (truncated)" : ""));
    const FamilyEval& kfe = *cx.kfe;
    const std::size_t kw = kfe.width();

    // per-class equation behaviour of the delta/epsilon transform
    std::vector<Mask> em;
    em.reserve(n);
    for (const auto& kv : cx.cls.kvals)
        em.push_back(detail::transform_eqmask(kfe, p, kv));

    if (cx.cls.exact) {
        const FamilyEval& sfe = *cx.sfe;
        const std::size_t sw = sfe.width();
        // formulas-to-equations transfer, both directions
        for (int s = 0; s <= b.max_premises; ++s) {
            std::size_t instances = 0;
            bool failed = false;
            std::string witness;
            detail::for_each_multiset(n, s, [&](const std::vector<std::size_t>& pick) {
                if (static_cast<int>(pick.size()) != s || failed)
                    return;
                Mask hs = mask_ones(sw), hk = mask_ones(kw);
                for (std::size_t i : pick) {
                    mask_and_inplace(hs, cx.cls.smask[i]);
                    mask_and_inplace(hk, em[i]);
                }
                for (std::size_t c = 0; c < n && !failed; ++c) {
                    ++instances;
                    bool lhs = mask_subset(hs, cx.cls.smask[c]);
                    bool rhs = mask_subset(hk, em[c]);
                    if (lhs != rhs) {
                        failed = true;
                        witness = detail::premise_str(cx.cls.reps, pick) + " vs " +
                                  to_string(cx.cls.reps[c]) + ": entailment " +
                                  (lhs ? "holds" : "fails") + " but equational consequence " +
                                  (rhs ? "holds" : "fails");
                    }
                }
            });
            std::string inst = "formulas-to-equations transfer, " + std::to_string(s) +
                               "-premise instances (" + std::to_string(instances) + ")";
            failed ? r.fail(inst, witness) : r.pass(inst);
        }
        // equation round trip: x=y and the transform of the equivalence set
        // have the same equational content
        {
            std::size_t instances = 0;
            bool failed = false;
            std::string witness;
            for (std::size_t i = 0; i < n && !failed; ++i) {
                for (std::size_t j = 0; j < n && !failed; ++j) {
                    ++instances;
                    Mask lhs = kfe.eq_mask(cx.cls.kvals[i], cx.cls.kvals[j]);
                    Mask rhs = mask_ones(kw);
                    std::vector<const std::vector<int>*> env{&cx.cls.kvals[i],
                                                             &cx.cls.kvals[j]};
                    for (const auto& d : p.equiv) {
                        std::vector<int> dv = kfe.eval_env(d, env);
                        std::vector<const std::vector<int>*> denv{&dv};
                        for (std::size_t u = 0; u < p.delta.size(); ++u)
                            mask_and_inplace(rhs,
                                             kfe.eq_mask(kfe.eval_env(p.delta[u], denv),
                                                         kfe.eval_env(p.epsilon[u], denv)));
                    }
                    if (!(lhs == rhs)) {
                        failed = true;
                        witness = to_string(cx.cls.reps[i]) + " = " + to_string(cx.cls.reps[j]);
                    }
                }
            }
            std::string inst =
                "equation round trip (" + std::to_string(instances) + " pairs)";
            failed ? r.fail(inst, witness) : r.pass(inst);
        }
        // equations-to-formulas transfer, both directions
        {
            std::vector<std::pair<std::size_t, std::size_t>> eqs;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    eqs.emplace_back(i, j);
            // per equation: its equation mask and the designation masks of
            // its equivalence-set image
            std::vector<Mask> eq_mask_of(eqs.size());
            std::vector<std::vector<Mask>> img_masks(eqs.size());
            const FamilyEval& se = *cx.sfe;
            for (std::size_t e = 0; e < eqs.size(); ++e) {
                auto [i, j] = eqs[e];
                eq_mask_of[e] = kfe.eq_mask(cx.cls.kvals[i], cx.cls.kvals[j]);
                std::vector<const std::vector<int>*> env{&cx.cls.svals[i], &cx.cls.svals[j]};
                for (const auto& d : p.equiv)
                    img_masks[e].push_back(se.des_mask(se.eval_env(d, env)));
            }
            for (int s = 0; s <= b.max_premises; ++s) {
                std::size_t instances = 0;
                bool failed = false;
                std::string witness;
                detail::for_each_multiset(eqs.size(), s, [&](const std::vector<std::size_t>& pick) {
                    if (static_cast<int>(pick.size()) != s || failed)
                        return;
                    Mask hk = mask_ones(kw), hs = mask_ones(sw);
                    for (std::size_t e : pick) {
                        mask_and_inplace(hk, eq_mask_of[e]);
                        for (const auto& m : img_masks[e])
                            mask_and_inplace(hs, m);
                    }
                    for (std::size_t c = 0; c < eqs.size() && !failed; ++c) {
                        ++instances;
                        bool lhs = mask_subset(hk, eq_mask_of[c]);
                        bool rhs = true;
                        for (const auto& m : img_masks[c])
                            if (!mask_subset(hs, m)) {
                                rhs = false;
                                break;
                            }
                        if (lhs != rhs) {
                            failed = true;
                            auto [ci, cj] = eqs[c];
                            witness = "equation " + to_string(cx.cls.reps[ci]) + " = " +
                                      to_string(cx.cls.reps[cj]) + ": equational consequence " +
                                      (lhs ? "holds" : "fails") + " but entailment " +
                                      (rhs ? "holds" : "fails");
                        }
                    }
                });
                std::string inst = "equations-to-formulas transfer, " + std::to_string(s) +
                                   "-premise instances (" + std::to_string(instances) + ")";
                failed ? r.fail(inst, witness) : r.pass(inst);
            }
        }
        // formula round trip: x interderivable with its transform
        {
            std::size_t instances = 0;
            bool failed = false;
            std::string witness;
            const FamilyEval& se = *cx.sfe;
            for (std::size_t i = 0; i < n && !failed; ++i) {
                ++instances;
                Mask back = mask_ones(sw);
                bool fwd_ok = true;
                std::vector<const std::vector<int>*> env{&cx.cls.svals[i]};
                for (std::size_t u = 0; u < p.delta.size() && fwd_ok; ++u) {
                    std::vector<int> dv = se.eval_env(p.delta[u], env);
                    std::vector<int> ev = se.eval_env(p.epsilon[u], env);
                    std::vector<const std::vector<int>*> denv{&dv, &ev};
                    for (const auto& d : p.equiv) {
                        Mask m = se.des_mask(se.eval_env(d, denv));
                        if (!mask_subset(cx.cls.smask[i], m))
                            fwd_ok = false;
                        mask_and_inplace(back, m);
                    }
                }
                if (!fwd_ok || !mask_subset(back, cx.cls.smask[i])) {
                    failed = true;
                    witness = to_string(cx.cls.reps[i]) +
                              (fwd_ok ? " is not recovered from its transform"
                                      : " does not entail its transform");
                }
            }
            std::string inst =
                "formula round trip (" + std::to_string(instances) + " classes)";
            failed ? r.fail(inst, witness) : r.pass(inst);
        }
        return r;
    }

    // sampled path: logic side goes through the oracle, generator side stays exact
    std::size_t budget = 30000;
    for (int s = 0; s <= std::min(b.max_premises, 1); ++s) {
        std::size_t instances = 0, unknowns = 0;
        bool failed = false, exhausted = false;
        std::string witness;
        detail::for_each_multiset(n, s, [&](const std::vector<std::size_t>& pick) {
            if (static_cast<int>(pick.size()) != s || failed || exhausted)
                return;
            Mask hk = mask_ones(kw);
            std::vector<Formula> gamma;
            for (std::size_t i : pick) {
                mask_and_inplace(hk, em[i]);
                gamma.push_back(cx.cls.reps[i]);
            }
            for (std::size_t c = 0; c < n && !failed; ++c) {
                if (budget == 0) {
                    exhausted = true;
                    return;
                }
                --budget;
                ++instances;
                Verdict v = l.oracle->entails(gamma, cx.cls.reps[c]);
                bool rhs = mask_subset(hk, em[c]);
                if (v == Verdict::Unknown) {
                    ++unknowns;
                    continue;
                }
                if ((v == Verdict::True) != rhs) {
                    failed = true;
                    witness = detail::premise_str(cx.cls.reps, pick) + " vs " +
                              to_string(cx.cls.reps[c]);
                }
            }
        });
        std::string inst = "formulas-to-equations transfer, " + std::to_string(s) +
                           "-premise instances (" + std::to_string(instances) + " sampled)";
        if (failed)
            r.fail(inst, witness);
        else if (unknowns)
            r.inconclusive(inst, std::to_string(unknowns) + " undecided");
        else
            r.pass(inst);
    }
    { // equation round trip is generator-side only, so it stays exact
        std::size_t instances = 0;
        bool failed = false;
        std::string witness;
        for (std::size_t i = 0; i < n && !failed; ++i) {
            for (std::size_t j = 0; j < n && !failed; ++j) {
                ++instances;
                Mask lhs = kfe.eq_mask(cx.cls.kvals[i], cx.cls.kvals[j]);
                Mask rhs = mask_ones(kw);
                std::vector<const std::vector<int>*> env{&cx.cls.kvals[i], &cx.cls.kvals[j]};
                for (const auto& d : p.equiv) {
                    std::vector<int> dv = kfe.eval_env(d, env);
                    std::vector<const std::vector<int>*> denv{&dv};
                    for (std::size_t u = 0; u < p.delta.size(); ++u)
                        mask_and_inplace(rhs, kfe.eq_mask(kfe.eval_env(p.delta[u], denv),
                                                          kfe.eval_env(p.epsilon[u], denv)));
                }
                if (!(lhs == rhs)) {
                    failed = true;
                    witness = to_string(cx.cls.reps[i]) + " = " + to_string(cx.cls.reps[j]);
                }
            }
        }
        std::string inst = "equation round trip (" + std::to_string(instances) + " pairs)";
        failed ? r.fail(inst, witness) : r.pass(inst);
    }
    { // equations-to-formulas transfer, single-premise sample
        std::size_t instances = 0, unknowns = 0;
        bool failed = false;
        std::string witness;
        std::size_t cap = std::min<std::size_t>(n, 12);
        for (std::size_t i = 0; i < cap && !failed; ++i) {
            for (std::size_t j = 0; j < cap && !failed; ++j) {
                Mask hk = kfe.eq_mask(cx.cls.kvals[i], cx.cls.kvals[j]);
                std::vector<Formula> gamma =
                    detail::equiv_set(p, cx.cls.reps[i], cx.cls.reps[j]);
                for (std::size_t a = 0; a < cap && !failed; ++a) {
                    for (std::size_t c = 0; c < cap && !failed; ++c) {
                        if (budget < p.equiv.size())
                            break;
                        ++instances;
                        bool lhs = mask_subset(
                            hk, kfe.eq_mask(cx.cls.kvals[a], cx.cls.kvals[c]));
                        bool rhs = true;
                        bool unknown = false;
                        for (const auto& g :
                             detail::equiv_set(p, cx.cls.reps[a], cx.cls.reps[c])) {
                            --budget;
                            Verdict v = l.oracle->entails(gamma, g);
                            if (v == Verdict::Unknown)
                                unknown = true;
                            else if (v == Verdict::False)
                                rhs = false;
                        }
                        if (unknown) {
                            ++unknowns;
                            continue;
                        }
                        if (lhs != rhs) {
                            failed = true;
                            witness = to_string(cx.cls.reps[i]) + " = " +
                                      to_string(cx.cls.reps[j]) + " vs " +
                                      to_string(cx.cls.reps[a]) + " = " +
                                      to_string(cx.cls.reps[c]);
                        }
                    }
                }
            }
        }
        std::string inst = "equations-to-formulas transfer, 1-premise instances (" +
                           std::to_string(instances) + " sampled)";
        if (failed)
            r.fail(inst, witness);
        else if (unknowns)
            r.inconclusive(inst, std::to_string(unknowns) + " undecided");
        else
            r.pass(inst);
    }
    { // formula round trip through the oracle
        std::size_t instances = 0, unknowns = 0;
        bool failed = false;
        std::string witness;
        for (std::size_t i = 0; i < n && !failed; ++i) {
            if (budget < 4 * p.delta.size() * p.equiv.size())
                break;
            ++instances;
            std::vector<Formula> transform;
            std::map<int, Formula> env;
            env.emplace(0, cx.cls.reps[i]);
            for (std::size_t u = 0; u < p.delta.size(); ++u) {
                Formula du = substitute(p.delta[u], env);
                Formula eu = substitute(p.epsilon[u], env);
                for (const auto& g : detail::equiv_set(p, du, eu))
                    transform.push_back(g);
            }
            bool unknown = false, bad = false;
            for (const auto& g : transform) {
                --budget;
                Verdict v = l.oracle->entails({cx.cls.reps[i]}, g);
                if (v == Verdict::Unknown)
                    unknown = true;
                else if (v == Verdict::False)
                    bad = true;
            }
            --budget;
            Verdict back = l.oracle->entails(transform, cx.cls.reps[i]);
            if (back == Verdict::Unknown)
                unknown = true;
            else if (back == Verdict::False)
                bad = true;
            if (unknown && !bad) {
                ++unknowns;
                continue;
            }
            if (bad) {
                failed = true;
                witness = to_string(cx.cls.reps[i]);
            }
        }
        std::string inst = "formula round trip (" + std::to_string(instances) + " classes)";
        if (failed)
            r.fail(inst, witness);
        else if (unknowns)
            r.inconclusive(inst, std::to_string(unknowns) + " undecided");
        else
            r.pass(inst);
    }
    return r;
}

// Interderivability coincides with provable equivalence-set membership:
// a -||- b iff all of Delta(a, b) are theorems.
inline Report check_lindenbaum(const Logic& l, const AlgebraizingPair& p,
                               const CheckBounds& b = {}) {
    p.validate(l.sig);
    Report r("equivalence collapse", l.name + " " + b.str());
    const auto* mo = detail::matrix_oracle(l);
    if (mo) {
        FamilyEval fe(mo->family(), b.nvars);
        std::vector<Formula> reps;
        std::vector<std::vector<int>> vals;
        std::vector<Mask> masks;
        std::map<std::vector<int>, bool> seen;
        std::size_t universe = 0;
        for (const Formula& f : enumerate_formulas(l.sig, b.nvars, b.depth, 500000)) {
            ++universe;
            std::vector<int> v = fe.eval(f);
            if (seen.emplace(v, true).second) {
                reps.push_back(f);
                masks.push_back(fe.des_mask(v));
                vals.push_back(std::move(v));
            }
        }
        r.pass("universe: " + std::to_string(universe) + " formulas, " +
               std::to_string(reps.size()) + " value classes");
        const Mask ones = mask_ones(fe.width());
        std::size_t instances = 0;
        bool failed = false;
        std::string witness;
        for (std::size_t i = 0; i < reps.size() && !failed; ++i) {
            for (std::size_t j = 0; j < reps.size() && !failed; ++j) {
                ++instances;
                bool lhs = masks[i] == masks[j];
                bool rhs = true;
                std::vector<const std::vector<int>*> env{&vals[i], &vals[j]};
                for (const auto& d : p.equiv) {
                    if (!(fe.des_mask(fe.eval_env(d, env)) == ones)) {
                        rhs = false;
                        break;
                    }
                }
                if (lhs != rhs) {
                    failed = true;
                    witness = to_string(reps[i]) + " vs " + to_string(reps[j]) +
                              (lhs ? ": interderivable but the equivalence set is not provable"
                                   : ": equivalence set provable but not interderivable");
                }
            }
        }
        std::string inst = "pairs (" + std::to_string(instances) + ")";
        failed ? r.fail(inst, witness) : r.pass(inst);
        return r;
    }
    detail::SampledClasses cls = detail::sample_classes(l, b.nvars, b.depth, 60);
    r.pass("universe: " + std::to_string(cls.universe) + " formulas, " +
           std::to_string(cls.reps.size()) +
           (cls.deduped ? " fingerprint classes" : " samples") +
           (cls.truncated ? " (truncated)" : ""));
    std::size_t instances = 0, unknowns = 0, budget = 20000;
    bool failed = false;
    std::string witness;
    for (std::size_t i = 0; i < cls.reps.size() && !failed; ++i) {
        for (std::size_t j = 0; j < cls.reps.size() && !failed; ++j) {
            if (budget < 2 + p.equiv.size())
                break;
            ++instances;
            budget -= 2;
            Verdict v1 = l.oracle->entails({cls.reps[i]}, cls.reps[j]);
            Verdict v2 = l.oracle->entails({cls.reps[j]}, cls.reps[i]);
            bool rhs = true;
            bool unknown = v1 == Verdict::Unknown || v2 == Verdict::Unknown;
            for (const auto& g : detail::equiv_set(p, cls.reps[i], cls.reps[j])) {
                --budget;
                Verdict v = l.oracle->entails({}, g);
                if (v == Verdict::Unknown)
                    unknown = true;
                else if (v == Verdict::False)
                    rhs = false;
            }
            if (unknown) {
                ++unknowns;
                continue;
            }
            bool lhs = v1 == Verdict::True && v2 == Verdict::True;
            if (lhs != rhs) {
                failed = true;
                witness = to_string(cls.reps[i]) + " vs " + to_string(cls.reps[j]);
            }
        }
    }
    std::string inst = "pairs (" + std::to_string(instances) + " sampled)";
    if (failed)
        r.fail(inst, witness);
    else if (unknowns)
        r.inconclusive(inst, std::to_string(unknowns) + " undecided");
    else
        r.pass(inst);
    return r;
}

// Partition of the bounded formula universe into interderivability classes,
// with the induced algebra when the classes are closed under the connectives.
struct LindenbaumResult {
    int nvars = 0;
    int depth = 0;
    std::size_t universe = 0;
    std::vector<Formula> reps; // first occurrence per class, enumeration order
    std::vector<std::size_t> class_sizes;
    std::vector<int> var_class; // class of each variable x0..x{nvars-1}
    bool saturated = false;
    std::optional<Formula> unsaturated_witness;
    std::optional<FiniteAlgebra> algebra; // present iff saturated
};

inline LindenbaumResult lindenbaum_quotient(const Logic& l, int nvars, int depth) {
    // interderivability must behave like a congruence for classes to carry
    // the connectives
    Report cg = check_congruential(l, CheckBounds{std::min(nvars, 2), 2, 1});
    if (cg.overall() == CheckVerdict::Fail)
        throw Error("lindenbaum_quotient: " + l.name + " failed the congruentiality spot check");

    LindenbaumResult out;
    out.nvars = nvars;
    out.depth = depth;
    const auto* mo = detail::matrix_oracle(l);

    if (mo) {
        FamilyEval fe(mo->family(), nvars);
        std::map<Mask, std::size_t> class_of;
        auto classify_vec = [&](const std::vector<int>& v, const Formula& f) {
            Mask m = fe.des_mask(v);
            auto [it, fresh] = class_of.emplace(std::move(m), out.reps.size());
            if (fresh) {
                out.reps.push_back(f);
                out.class_sizes.push_back(0);
            }
            ++out.class_sizes[it->second];
            return it->second;
        };
        bool materialized = true;
        try {
            for (const Formula& f : enumerate_formulas(l.sig, nvars, depth, 200000)) {
                ++out.universe;
                classify_vec(fe.eval(f), f);
            }
        } catch (const Error&) {
            materialized = false;
            out.universe = 0;
            out.reps.clear();
            out.class_sizes.clear();
            class_of.clear();
        }
        if (!materialized) {
            // the last level is too large to hold; walk it compositionally,
            // in exactly the enumeration order, keeping only value vectors
            FormulaLevels lv = enumerate_levels(l.sig, nvars, depth - 1, 200000);
            std::vector<Formula> prefix = lv.flat();
            std::vector<std::vector<int>> pvals;
            pvals.reserve(prefix.size());
            for (const Formula& f : prefix) {
                ++out.universe;
                classify_vec(fe.eval(f), f);
                pvals.push_back(fe.eval(f));
            }
            const std::size_t pn = prefix.size();
            for (const auto& [arity, names] : l.sig.conns()) {
                if (arity == 0)
                    continue;
                for (const auto& c : names) {
                    std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
                    while (true) {
                        int dmax = 0;
                        for (int j = 0; j < arity; ++j)
                            dmax = std::max(dmax,
                                            prefix[idx[static_cast<std::size_t>(j)]].depth());
                        if (dmax == depth - 1) {
                            ++out.universe;
                            std::vector<const std::vector<int>*> args;
                            args.reserve(static_cast<std::size_t>(arity));
                            for (int j = 0; j < arity; ++j)
                                args.push_back(&pvals[idx[static_cast<std::size_t>(j)]]);
                            std::vector<int> v = fe.apply(c, args);
                            Mask m = fe.des_mask(v);
                            auto [it, fresh] = class_of.emplace(std::move(m), out.reps.size());
                            if (fresh) {
                                std::vector<Formula> fargs;
                                for (int j = 0; j < arity; ++j)
                                    fargs.push_back(prefix[idx[static_cast<std::size_t>(j)]]);
                                out.reps.push_back(Formula::app(c, std::move(fargs)));
                                out.class_sizes.push_back(0);
                            }
                            ++out.class_sizes[it->second];
                        }
                        int j = arity - 1;
                        for (; j >= 0; --j) {
                            if (++idx[static_cast<std::size_t>(j)] < pn)
                                break;
                            idx[static_cast<std::size_t>(j)] = 0;
                        }
                        if (j < 0)
                            break;
                    }
                }
            }
        }
        for (int i = 0; i < nvars; ++i) {
            Mask m = fe.des_mask(fe.eval(Formula::var(i)));
            auto it = class_of.find(m);
            out.var_class.push_back(static_cast<int>(it->second));
        }
        // saturation: connectives applied to class representatives must not
        // leave the found classes
        const std::size_t k = out.reps.size();
        std::map<std::string, std::vector<int>> tables;
        out.saturated = true;
        for (const auto& [arity, names] : l.sig.conns()) {
            for (const auto& c : names) {
                std::size_t rows = 1;
                for (int i = 0; i < arity; ++i)
                    rows *= k;
                std::vector<int> tbl;
                tbl.reserve(rows);
                std::vector<std::size_t> t(static_cast<std::size_t>(arity), 0);
                std::size_t done = 0;
                while (done < rows && out.saturated) {
                    std::vector<Formula> args;
                    for (int j = 0; j < arity; ++j)
                        args.push_back(out.reps[t[static_cast<std::size_t>(j)]]);
                    Formula g = Formula::app(c, args);
                    Mask m = fe.des_mask(fe.eval(g));
                    auto it = class_of.find(m);
                    if (it == class_of.end()) {
                        out.saturated = false;
                        out.unsaturated_witness = g;
                        break;
                    }
                    tbl.push_back(static_cast<int>(it->second));
                    ++done;
                    int j = arity - 1;
                    for (; j >= 0; --j) {
                        if (++t[static_cast<std::size_t>(j)] < k)
                            break;
                        t[static_cast<std::size_t>(j)] = 0;
                    }
                    if (j < 0)
                        break;
                }
                if (!out.saturated)
                    break;
                tables.emplace(c, std::move(tbl));
            }
            if (!out.saturated)
                break;
        }
        if (out.saturated)
            out.algebra.emplace(l.sig, static_cast<int>(k), std::move(tables),
                                "lindenbaum(" + l.name + "," + std::to_string(nvars) + ")");
        return out;
    }

    if (!l.oracle->has_fingerprint() || !l.oracle->exact())
        throw Error("lindenbaum_quotient: the oracle of " + l.name +
                    " cannot classify formulas up to interderivability");

    // exact non-matrix oracle: fingerprint buckets refined by oracle queries
    std::map<std::vector<int>, std::vector<std::size_t>> buckets; // fp -> class ids
    auto classify = [&](const Formula& f) {
        std::vector<int> fp = l.oracle->fingerprint(f, nvars);
        auto& ids = buckets[fp];
        for (std::size_t id : ids) {
            if (l.oracle->entails({f}, out.reps[id]) == Verdict::True &&
                l.oracle->entails({out.reps[id]}, f) == Verdict::True)
                return id;
        }
        std::size_t id = out.reps.size();
        out.reps.push_back(f);
        out.class_sizes.push_back(0);
        if (out.reps.size() > 4096)
            throw Error("lindenbaum_quotient: more than 4096 classes, raise no further");
        ids.push_back(id);
        return id;
    };
    for (const Formula& f : enumerate_formulas(l.sig, nvars, depth, 200000)) {
        ++out.universe;
        ++out.class_sizes[classify(f)];
    }
    for (int i = 0; i < nvars; ++i) {
        // variables are in the universe, so this cannot create a class
        std::size_t before = out.reps.size();
        std::size_t id = classify(Formula::var(i));
        if (out.reps.size() != before)
            throw Error("lindenbaum_quotient: internal classification drift");
        out.var_class.push_back(static_cast<int>(id));
    }
    const std::size_t k = out.reps.size();
    std::map<std::string, std::vector<int>> tables;
    out.saturated = true;
    for (const auto& [arity, names] : l.sig.conns()) {
        for (const auto& c : names) {
            std::size_t rows = 1;
            for (int i = 0; i < arity; ++i)
                rows *= k;
            std::vector<int> tbl;
            tbl.reserve(rows);
            std::vector<std::size_t> t(static_cast<std::size_t>(arity), 0);
            std::size_t done = 0;
            while (done < rows && out.saturated) {
                std::vector<Formula> args;
                for (int j = 0; j < arity; ++j)
                    args.push_back(out.reps[t[static_cast<std::size_t>(j)]]);
                Formula g = Formula::app(c, args);
                std::vector<int> fp = l.oracle->fingerprint(g, nvars);
                auto bit = buckets.find(fp);
                int found = -1;
                if (bit != buckets.end()) {
                    for (std::size_t id : bit->second) {
                        if (l.oracle->entails({g}, out.reps[id]) == Verdict::True &&
                            l.oracle->entails({out.reps[id]}, g) == Verdict::True) {
                            found = static_cast<int>(id);
                            break;
                        }
                    }
                }
                if (found < 0) {
                    out.saturated = false;
                    out.unsaturated_witness = g;
                    break;
                }
                tbl.push_back(found);
                ++done;
                int j = arity - 1;
                for (; j >= 0; --j) {
                    if (++t[static_cast<std::size_t>(j)] < k)
                        break;
                    t[static_cast<std::size_t>(j)] = 0;
                }
                if (j < 0)
                    break;
            }
            if (!out.saturated)
                break;
            tables.emplace(c, std::move(tbl));
        }
        if (!out.saturated)
            break;
    }
    if (out.saturated)
        out.algebra.emplace(l.sig, static_cast<int>(k), std::move(tables),
                            "lindenbaum(" + l.name + "," + std::to_string(nvars) + ")");
    return out;
}

// Is the Lindenbaum algebra the free object on nvars generators over the
// quasivariety?  Checks membership, the unique-extension property against
// the supplied test algebras, and isomorphism with the free algebra built
// from the generators presentation.
inline Report verify_free_object(const Logic& l, const LindenbaumResult& lt,
                                 const QuasivarietySpec& qv,
                                 const std::vector<FiniteAlgebra>& tests,
                                 std::size_t size_cap = size_cap_from_env()) {
    Report r("free object",
             "lindenbaum algebra of " + l.name + " on " + std::to_string(lt.nvars) +
                 " generators");
    if (!lt.saturated || !lt.algebra) {
        r.fail("saturation", lt.unsaturated_witness
                                 ? to_string(*lt.unsaturated_witness) + " leaves the classes"
                                 : "classes not closed under the connectives");
        return r;
    }
    const FiniteAlgebra& L = *lt.algebra;
    MembershipResult mem = in_quasivariety(L, qv);
    if (mem.member)
        r.pass("member of " + qv.name());
    else
        r.fail("member of " + qv.name(), mem.witness);

    for (const auto& B : tests) {
        std::size_t expected = 1;
        for (int i = 0; i < lt.nvars; ++i)
            expected *= static_cast<std::size_t>(B.size());
        auto homs = enumerate_homs(L, B);
        std::map<std::vector<int>, int> restr;
        for (const auto& h : homs) {
            std::vector<int> key;
            for (int vc : lt.var_class)
                key.push_back(h[static_cast<std::size_t>(vc)]);
            ++restr[key];
        }
        bool ok = homs.size() == expected && restr.size() == homs.size();
        std::string inst = "unique extension into " + B.name() + " (" +
                           std::to_string(expected) + " assignments)";
        if (ok)
            r.pass(inst);
        else
            r.fail(inst, std::to_string(homs.size()) + " homs over " +
                             std::to_string(restr.size()) + " distinct assignments");
    }

    if (qv.has_generators()) {
        FreeAlgebraResult free = free_algebra(qv, lt.nvars, size_cap);
        std::vector<int> partial(static_cast<std::size_t>(L.size()), -1);
        bool consistent = true;
        for (int i = 0; i < lt.nvars; ++i) {
            int& slot = partial[static_cast<std::size_t>(lt.var_class[static_cast<std::size_t>(i)])];
            int want = free.generators[static_cast<std::size_t>(i)];
            if (slot >= 0 && slot != want)
                consistent = false;
            slot = want;
        }
        auto homs = consistent ? find_homs_extending(L, free.algebra, partial)
                               : std::vector<std::vector<int>>{};
        bool ok = homs.size() == 1;
        if (ok) {
            std::vector<char> hit(static_cast<std::size_t>(free.algebra.size()), 0);
            for (int v : homs[0]) {
                if (hit[static_cast<std::size_t>(v)]) {
                    ok = false;
                    break;
                }
                hit[static_cast<std::size_t>(v)] = 1;
            }
            ok = ok && L.size() == free.algebra.size();
        }
        std::string inst = "generator-preserving isomorphism with " + free.algebra.name();
        if (ok)
            r.pass(inst);
        else
            r.fail(inst, std::to_string(homs.size()) +
                             " generator-preserving homs, sizes " + std::to_string(L.size()) +
                             " vs " + std::to_string(free.algebra.size()));
    } else {
        r.inconclusive("isomorphism with the generated free algebra",
                       qv.name() + " has no generators presentation");
    }
    return r;
}

} // namespace lwb
