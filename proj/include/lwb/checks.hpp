#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "lwb/consequence.hpp"
#include "lwb/report.hpp"

namespace lwb {

struct CheckBounds {
    int nvars = 2;
    int depth = 3;
    int max_premises = 2;

    std::string str() const {
        return "(nvars=" + std::to_string(nvars) + ", depth=" + std::to_string(depth) +
               ", premises<=" + std::to_string(max_premises) + ")";
    }
};

namespace detail {

inline const MatrixFamilyOracle* matrix_oracle(const Logic& l) {
    return dynamic_cast<const MatrixFamilyOracle*>(l.oracle.get());
}

inline void require_morphism(const FlexMorphism& t, const Logic& src, const Logic& tgt) {
    if (!(t.source() == src.sig))
        throw Error("morphism " + t.name() + " does not start at " + src.name);
    if (!(t.target() == tgt.sig))
        throw Error("morphism " + t.name() + " does not land in " + tgt.name);
}

// non-decreasing index multisets of sizes 0..max_size over n items, lex order
template <typename F>
inline void for_each_multiset(std::size_t n, int max_size, F&& fn) {
    std::vector<std::size_t> pick;
    fn(pick);
    for (int s = 1; s <= max_size && n > 0; ++s) {
        pick.assign(static_cast<std::size_t>(s), 0);
        while (true) {
            fn(pick);
            int j = s - 1;
            while (j >= 0 && pick[static_cast<std::size_t>(j)] == n - 1)
                --j;
            if (j < 0)
                break;
            ++pick[static_cast<std::size_t>(j)];
            for (int l = j + 1; l < s; ++l)
                pick[static_cast<std::size_t>(l)] = pick[static_cast<std::size_t>(j)];
        }
    }
}

inline std::string premise_str(const std::vector<Formula>& reps,
                               const std::vector<std::size_t>& pick) {
    std::string out = "{";
    for (std::size_t i = 0; i < pick.size(); ++i)
        out += (i ? "; " : "") + to_string(reps[pick[i]]);
    return out + "}";
}

inline std::string formulas_str(const std::vector<Formula>& fs) {
    std::string out = "{";
    for (std::size_t i = 0; i < fs.size(); ++i)
        out += (i ? "; " : "") + to_string(fs[i]);
    return out + "}";
}

// Formulas of the bounded universe grouped into entailment-behaviour classes:
// two formulas land together when they have the same designation pattern in
// the source logic and their translations have the same pattern in the
// target.  Verdicts of every bounded entailment instance depend only on
// these patterns, so sweeping one representative per class is exhaustive.
struct PairClasses {
    std::vector<Formula> reps;
    std::vector<Mask> src;
    std::vector<Mask> tgt;
    std::size_t universe = 0;
    std::size_t width_src = 0;
    std::size_t width_tgt = 0;
};

inline PairClasses classify_pair(const Logic& src, const Logic& tgt, const FlexMorphism& t,
                                 int nvars, int depth) {
    const auto* so = matrix_oracle(src);
    const auto* to = matrix_oracle(tgt);
    FamilyEval fe(so->family(), nvars);
    PullbackEval pe(t, to->family(), nvars);
    PairClasses out;
    out.width_src = fe.width();
    out.width_tgt = pe.width();
    std::map<std::pair<Mask, Mask>, std::size_t> seen;
    for (const Formula& f : enumerate_formulas(src.sig, nvars, depth, 500000)) {
        ++out.universe;
        Mask a = fe.des_mask(fe.eval(f));
        Mask b = pe.des_mask(pe.eval(f));
        if (seen.emplace(std::make_pair(a, b), out.reps.size()).second) {
            out.reps.push_back(f);
            out.src.push_back(std::move(a));
            out.tgt.push_back(std::move(b));
        }
    }
    return out;
}

// Exhaustive-by-classes sweep: premises |- conclusion in `from` must carry
// over to `to`.  Returns entries per premise count; first violation wins.
inline void sweep_mask_implication(const std::vector<Formula>& reps,
                                   const std::vector<Mask>& from, const std::vector<Mask>& to,
                                   std::size_t width_from, std::size_t width_to,
                                   int max_premises, const std::string& label, Report& r) {
    for (int s = 0; s <= max_premises; ++s) {
        std::size_t instances = 0;
        bool failed = false;
        std::string witness;
        for_each_multiset(reps.size(), s, [&](const std::vector<std::size_t>& pick) {
            if (static_cast<int>(pick.size()) != s || failed)
                return;
            Mask hyp_from = mask_ones(width_from);
            Mask hyp_to = mask_ones(width_to);
            for (std::size_t i : pick) {
                mask_and_inplace(hyp_from, from[i]);
                mask_and_inplace(hyp_to, to[i]);
            }
            for (std::size_t c = 0; c < reps.size() && !failed; ++c) {
                ++instances;
                if (mask_subset(hyp_from, from[c]) && !mask_subset(hyp_to, to[c])) {
                    failed = true;
                    witness = premise_str(reps, pick) + " |- " + to_string(reps[c]) +
                              " holds but its image does not";
                }
            }
        });
        std::string inst = label + ", " + std::to_string(s) + "-premise instances (" +
                           std::to_string(instances) + " up to equivalence)";
        if (failed)
            r.fail(inst, witness);
        else
            r.pass(inst);
    }
}

// bounded universe for logics without matrix semantics, deduplicated by
// semantic fingerprint when the oracle provides one
struct SampledClasses {
    std::vector<Formula> reps;
    std::size_t universe = 0;
    bool deduped = false;
    bool truncated = false;
};

inline SampledClasses sample_classes(const Logic& l, int nvars, int depth,
                                     std::size_t max_reps = 200) {
    SampledClasses out;
    std::vector<Formula> formulas = enumerate_formulas(l.sig, nvars, depth, 500000);
    out.universe = formulas.size();
    if (l.oracle->has_fingerprint()) {
        out.deduped = true;
        std::map<std::vector<int>, bool> seen;
        for (const Formula& f : formulas) {
            if (seen.emplace(l.oracle->fingerprint(f, nvars), true).second) {
                if (out.reps.size() >= max_reps) {
                    out.truncated = true;
                    break;
                }
                out.reps.push_back(f);
            }
        }
    } else {
        for (const Formula& f : formulas) {
            if (out.reps.size() >= max_reps) {
                out.truncated = true;
                break;
            }
            out.reps.push_back(f);
        }
    }
    return out;
}

// oracle-call sweep of the same implication shape, with a call budget
inline void sweep_oracle_implication(
    const std::vector<Formula>& reps, const Logic& from, const Logic& to,
    const FlexMorphism& t, int max_premises, bool reverse, const std::string& label,
    Report& r, std::size_t budget = 30000) {
    std::vector<Formula> lifted;
    lifted.reserve(reps.size());
    for (const auto& f : reps)
        lifted.push_back(t.lift(f));
    std::size_t calls = 0;
    for (int s = 0; s <= max_premises; ++s) {
        std::size_t instances = 0, unknowns = 0;
        bool failed = false, exhausted = false;
        std::string witness;
        for_each_multiset(reps.size(), s, [&](const std::vector<std::size_t>& pick) {
            if (static_cast<int>(pick.size()) != s || failed || exhausted)
                return;
            std::vector<Formula> gamma_src, gamma_img;
            for (std::size_t i : pick) {
                gamma_src.push_back(reps[i]);
                gamma_img.push_back(lifted[i]);
            }
            for (std::size_t c = 0; c < reps.size() && !failed; ++c) {
                if (calls >= budget) {
                    exhausted = true;
                    return;
                }
                ++instances;
                ++calls;
                Verdict hyp = reverse ? to.oracle->entails(gamma_img, lifted[c])
                                      : from.oracle->entails(gamma_src, reps[c]);
                if (hyp == Verdict::Unknown) {
                    ++unknowns;
                    continue;
                }
                if (hyp == Verdict::False)
                    continue;
                ++calls;
                Verdict con = reverse ? from.oracle->entails(gamma_src, reps[c])
                                      : to.oracle->entails(gamma_img, lifted[c]);
                if (con == Verdict::False) {
                    failed = true;
                    witness = premise_str(reps, pick) + " |- " + to_string(reps[c]);
                } else if (con == Verdict::Unknown) {
                    ++unknowns;
                }
            }
        });
        std::string inst = label + ", " + std::to_string(s) + "-premise instances (" +
                           std::to_string(instances) + " sampled)";
        if (failed)
            r.fail(inst, witness);
        else if (unknowns > 0)
            r.inconclusive(inst, std::to_string(unknowns) + " instances undecided");
        else
            r.pass(inst);
    }
}

} // namespace detail

// Does src-consequence transfer along t?  For every bounded instance with
// premises Γ and conclusion ψ: Γ |- ψ in src implies t[Γ] |- t(ψ) in tgt.
inline Report check_translation(const Logic& src, const Logic& tgt, const FlexMorphism& t,
                                const CheckBounds& b = {}) {
    detail::require_morphism(t, src, tgt);
    Report r("translation",
             (t.name().empty() ? src.name + " -> " + tgt.name : t.name()) + " " + b.str());
    if (detail::matrix_oracle(src) && detail::matrix_oracle(tgt)) {
        detail::PairClasses cls = detail::classify_pair(src, tgt, t, b.nvars, b.depth);
        r.pass("universe: " + std::to_string(cls.universe) + " formulas, " +
               std::to_string(cls.reps.size()) + " behaviour classes");
        detail::sweep_mask_implication(cls.reps, cls.src, cls.tgt, cls.width_src,
                                       cls.width_tgt, b.max_premises, "forward", r);
    } else {
        detail::SampledClasses cls = detail::sample_classes(src, b.nvars, b.depth);
        r.pass("universe: " + std::to_string(cls.universe) + " formulas, " +
               std::to_string(cls.reps.size()) +
               (cls.deduped ? " fingerprint classes" : " samples") +
               (cls.truncated ? " (truncated)" : ""));
        detail::sweep_oracle_implication(cls.reps, src, tgt, t, b.max_premises, false,
                                         "forward", r);
    }
    return r;
}

// translation in both directions: Γ |- ψ iff t[Γ] |- t(ψ)
inline Report check_conservative(const Logic& src, const Logic& tgt, const FlexMorphism& t,
                                 const CheckBounds& b = {}) {
    detail::require_morphism(t, src, tgt);
    Report r("conservative translation",
             (t.name().empty() ? src.name + " -> " + tgt.name : t.name()) + " " + b.str());
    if (detail::matrix_oracle(src) && detail::matrix_oracle(tgt)) {
        detail::PairClasses cls = detail::classify_pair(src, tgt, t, b.nvars, b.depth);
        r.pass("universe: " + std::to_string(cls.universe) + " formulas, " +
               std::to_string(cls.reps.size()) + " behaviour classes");
        detail::sweep_mask_implication(cls.reps, cls.src, cls.tgt, cls.width_src,
                                       cls.width_tgt, b.max_premises, "forward", r);
        detail::sweep_mask_implication(cls.reps, cls.tgt, cls.src, cls.width_tgt,
                                       cls.width_src, b.max_premises, "reverse", r);
    } else {
        detail::SampledClasses cls = detail::sample_classes(src, b.nvars, b.depth);
        r.pass("universe: " + std::to_string(cls.universe) + " formulas, " +
               std::to_string(cls.reps.size()) +
               (cls.deduped ? " fingerprint classes" : " samples") +
               (cls.truncated ? " (truncated)" : ""));
        detail::sweep_oracle_implication(cls.reps, src, tgt, t, b.max_premises, false,
                                         "forward", r);
        detail::sweep_oracle_implication(cls.reps, src, tgt, t, b.max_premises, true,
                                         "reverse", r);
    }
    return r;
}

// Is every formula of the logic interderivable with every other one that has
// the same behaviour after being plugged into any connective?  Checked by
// single-argument replacement, which composes to the general property.
inline Report check_congruential(const Logic& l, const CheckBounds& b = {}) {
    Report r("congruentiality", l.name + " " + b.str());
    const auto* mo = detail::matrix_oracle(l);
    if (mo) {
        FamilyEval fe(mo->family(), b.nvars);
        std::vector<Formula> reps;
        std::vector<std::vector<int>> vals;
        std::vector<Mask> masks;
        std::map<std::vector<int>, std::size_t> seen;
        std::size_t universe = 0;
        for (const Formula& f : enumerate_formulas(l.sig, b.nvars, b.depth, 500000)) {
            ++universe;
            const std::vector<int>& v = fe.eval(f);
            if (seen.emplace(v, reps.size()).second) {
                reps.push_back(f);
                vals.push_back(v);
                masks.push_back(fe.des_mask(v));
            }
        }
        r.pass("universe: " + std::to_string(universe) + " formulas, " +
               std::to_string(reps.size()) + " value classes");
        // pairs of distinct value classes that are interderivable
        std::vector<std::pair<std::size_t, std::size_t>> eq_pairs;
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i + 1; j < reps.size(); ++j)
                if (masks[i] == masks[j])
                    eq_pairs.emplace_back(i, j);
        for (const auto& [arity, names] : l.sig.conns()) {
            for (const auto& c : names) {
                std::size_t checked = 0;
                bool failed = false;
                std::string witness;
                for (const auto& [i, j] : eq_pairs) {
                    if (failed)
                        break;
                    for (int pos = 0; pos < arity && !failed; ++pos) {
                        // other argument slots range over all value classes
                        std::vector<std::size_t> ctx(static_cast<std::size_t>(arity - 1), 0);
                        while (true) {
                            std::vector<const std::vector<int>*> a1, a2;
                            std::size_t ci = 0;
                            for (int p = 0; p < arity; ++p) {
                                if (p == pos) {
                                    a1.push_back(&vals[i]);
                                    a2.push_back(&vals[j]);
                                } else {
                                    a1.push_back(&vals[ctx[ci]]);
                                    a2.push_back(&vals[ctx[ci]]);
                                    ++ci;
                                }
                            }
                            ++checked;
                            Mask m1 = fe.des_mask(fe.apply(c, a1));
                            Mask m2 = fe.des_mask(fe.apply(c, a2));
                            if (!(m1 == m2)) {
                                failed = true;
                                witness = to_string(reps[i]) + " -||- " + to_string(reps[j]) +
                                          " but " + c + " images differ (slot " +
                                          std::to_string(pos) + ")";
                                break;
                            }
                            int k = arity - 2;
                            for (; k >= 0; --k) {
                                if (++ctx[static_cast<std::size_t>(k)] < reps.size())
                                    break;
                                ctx[static_cast<std::size_t>(k)] = 0;
                            }
                            if (k < 0)
                                break;
                        }
                    }
                    if (arity == 0)
                        break; // nothing to plug into a constant
                }
                std::string inst = "connective " + c + " (" + std::to_string(checked) +
                                   " replacement instances)";
                if (failed)
                    r.fail(inst, witness);
                else
                    r.pass(inst);
            }
        }
        return r;
    }
    // sampled path: confirm equivalences with the oracle, then test replacement
    detail::SampledClasses cls = detail::sample_classes(l, b.nvars, b.depth, 400);
    std::map<std::vector<int>, std::vector<Formula>> buckets;
    if (l.oracle->has_fingerprint()) {
        for (const Formula& f : enumerate_formulas(l.sig, b.nvars, b.depth, 500000)) {
            auto& bucket = buckets[l.oracle->fingerprint(f, b.nvars)];
            if (bucket.size() < 3)
                bucket.push_back(f);
        }
    }
    r.pass("universe: " + std::to_string(cls.universe) + " formulas, " +
           std::to_string(buckets.size()) + " candidate classes");
    std::vector<std::pair<Formula, Formula>> eq_pairs;
    std::size_t budget = 2000;
    for (const auto& [fp, members] : buckets) {
        for (std::size_t i = 0; i + 1 < members.size() && eq_pairs.size() < 40; ++i) {
            if (budget < 2)
                break;
            budget -= 2;
            if (l.oracle->entails({members[i]}, members[i + 1]) == Verdict::True &&
                l.oracle->entails({members[i + 1]}, members[i]) == Verdict::True)
                eq_pairs.emplace_back(members[i], members[i + 1]);
        }
    }
    std::vector<Formula> fillers;
    for (const auto& f : cls.reps) {
        fillers.push_back(f);
        if (fillers.size() >= 4)
            break;
    }
    for (const auto& [arity, names] : l.sig.conns()) {
        for (const auto& c : names) {
            std::size_t checked = 0, unknowns = 0;
            bool failed = false;
            std::string witness;
            for (const auto& [phi, psi] : eq_pairs) {
                if (failed)
                    break;
                for (int pos = 0; pos < arity && !failed; ++pos) {
                    std::vector<std::size_t> ctx(static_cast<std::size_t>(arity - 1), 0);
                    while (true) {
                        std::vector<Formula> a1, a2;
                        std::size_t ci = 0;
                        for (int p = 0; p < arity; ++p) {
                            if (p == pos) {
                                a1.push_back(phi);
                                a2.push_back(psi);
                            } else {
                                a1.push_back(fillers[ctx[ci]]);
                                a2.push_back(fillers[ctx[ci]]);
                                ++ci;
                            }
                        }
                        ++checked;
                        Formula f1 = Formula::app(l.sig, c, a1);
                        Formula f2 = Formula::app(l.sig, c, a2);
                        Verdict v1 = l.oracle->entails({f1}, f2);
                        Verdict v2 = l.oracle->entails({f2}, f1);
                        if (v1 == Verdict::False || v2 == Verdict::False) {
                            failed = true;
                            witness = to_string(phi) + " -||- " + to_string(psi) + " but " + c +
                                      " images differ (slot " + std::to_string(pos) + ")";
                            break;
                        }
                        if (v1 == Verdict::Unknown || v2 == Verdict::Unknown)
                            ++unknowns;
                        int k = arity - 2;
                        for (; k >= 0; --k) {
                            if (++ctx[static_cast<std::size_t>(k)] <
                                std::min<std::size_t>(fillers.size(), 4))
                                break;
                            ctx[static_cast<std::size_t>(k)] = 0;
                        }
                        if (k < 0)
                            break;
                    }
                }
                if (arity == 0)
                    break;
            }
            std::string inst = "connective " + c + " (" + std::to_string(checked) +
                               " replacement instances)";
            if (failed)
                r.fail(inst, witness);
            else if (unknowns > 0)
                r.inconclusive(inst, std::to_string(unknowns) + " instances undecided");
            else
                r.pass(inst);
        }
    }
    return r;
}

// For each target connective c', is some translated source formula
// interderivable with c'(x0,...)?  Meaningful when the target identifies
// interderivable formulas inside connectives, so that is spot-checked first.
inline Report check_dense(const Logic& src, const Logic& tgt, const FlexMorphism& t,
                          const CheckBounds& b = {}) {
    detail::require_morphism(t, src, tgt);
    Report r("density", (t.name().empty() ? src.name + " -> " + tgt.name : t.name()) + " " +
                            b.str());
    CheckBounds small{std::min(b.nvars, 2), std::min(b.depth, 2), 1};
    Report cg = check_congruential(tgt, small);
    r.add("target congruentiality (spot check " + small.str() + ")", cg.overall());
    const auto* so = detail::matrix_oracle(src);
    const auto* to = detail::matrix_oracle(tgt);
    for (const std::string& name : tgt.sig.all_conns()) {
        const int arity = tgt.sig.arity_of(name);
        std::vector<Formula> xs;
        for (int i = 0; i < arity; ++i)
            xs.push_back(Formula::var(i));
        Formula goal = Formula::app(tgt.sig, name, xs);
        const int nv = std::max(b.nvars, arity);
        bool found = false, any_unknown = false;
        std::string witness;
        if (so && to) {
            FamilyEval tf(to->family(), nv);
            PullbackEval pe(t, to->family(), nv);
            Mask goal_mask = tf.des_mask(tf.eval(goal));
            for (const Formula& f : enumerate_formulas(src.sig, b.nvars, b.depth, 500000)) {
                if (pe.des_mask(pe.eval(f)) == goal_mask) {
                    found = true;
                    witness = to_string(f) + " translates to a formula interderivable with " +
                              to_string(goal);
                    break;
                }
            }
        } else {
            detail::SampledClasses cls = detail::sample_classes(src, b.nvars, b.depth, 400);
            std::size_t budget = 4000;
            for (const Formula& f : cls.reps) {
                if (budget < 2)
                    break;
                budget -= 2;
                Formula img = t.lift(f);
                Verdict v1 = tgt.oracle->entails({img}, goal);
                Verdict v2 = tgt.oracle->entails({goal}, img);
                if (v1 == Verdict::Unknown || v2 == Verdict::Unknown) {
                    any_unknown = true;
                    continue;
                }
                if (v1 == Verdict::True && v2 == Verdict::True) {
                    found = true;
                    witness = to_string(f) + " translates to a formula interderivable with " +
                              to_string(goal);
                    break;
                }
            }
        }
        std::string inst = "connective " + name;
        if (found)
            r.add(inst, CheckVerdict::Pass, witness);
        else if (any_unknown)
            r.inconclusive(inst, "no witness found, some candidates undecided");
        else
            r.fail(inst, "no preimage up to depth " + std::to_string(b.depth) + " with " +
                             std::to_string(b.nvars) + " variables");
    }
    return r;
}

// Do two morphisms into the same logic agree up to interderivability on
// every connective?
inline Report morphisms_equivalent(const Logic& src, const Logic& tgt, const FlexMorphism& f,
                                   const FlexMorphism& g, const CheckBounds& b = {}) {
    detail::require_morphism(f, src, tgt);
    detail::require_morphism(g, src, tgt);
    Report r("morphism equivalence", f.name() + " vs " + g.name());
    CheckBounds small{std::min(b.nvars, 2), std::min(b.depth, 2), 1};
    Report cg = check_congruential(tgt, small);
    r.add("target congruentiality (spot check " + small.str() + ")", cg.overall());
    const auto* to = detail::matrix_oracle(tgt);
    for (const std::string& name : src.sig.all_conns()) {
        const int arity = src.sig.arity_of(name);
        std::vector<Formula> xs;
        for (int i = 0; i < arity; ++i)
            xs.push_back(Formula::var(i));
        Formula lhs = f.lift(Formula::app(src.sig, name, xs));
        Formula rhs = g.lift(Formula::app(src.sig, name, xs));
        std::string inst = "connective " + name;
        if (to) {
            FamilyEval fe(to->family(), std::max(arity, 1));
            if (fe.des_mask(fe.eval(lhs)) == fe.des_mask(fe.eval(rhs)))
                r.pass(inst);
            else
                r.fail(inst, to_string(lhs) + " and " + to_string(rhs) +
                                 " are not interderivable");
        } else {
            Verdict v1 = tgt.oracle->entails({lhs}, rhs);
            Verdict v2 = tgt.oracle->entails({rhs}, lhs);
            if (v1 == Verdict::False || v2 == Verdict::False)
                r.fail(inst, to_string(lhs) + " and " + to_string(rhs) +
                                 " are not interderivable");
            else if (v1 == Verdict::Unknown || v2 == Verdict::Unknown)
                r.inconclusive(inst);
            else
                r.pass(inst);
        }
    }
    return r;
}

// Reflexivity, monotonicity, cut and structurality on bounded samples.
inline Report check_tarskian(const Logic& l, const CheckBounds& b = {}) {
    Report r("tarskian properties", l.name + " " + b.str());
    std::vector<Formula> universe = enumerate_formulas(l.sig, b.nvars, b.depth, 100000);
    if (universe.empty()) {
        r.fail("sample universe", "no formulas under the given bounds");
        return r;
    }
    auto first_n = [&](std::size_t n) {
        std::vector<Formula> out;
        for (std::size_t i = 0; i < universe.size() && i < n; ++i)
            out.push_back(universe[i]);
        return out;
    };
    std::vector<Formula> samples = first_n(8);
    std::vector<std::vector<Formula>> gammas;
    gammas.push_back({});
    for (std::size_t i = 0; i < universe.size() && i < 6; ++i)
        gammas.push_back({universe[i]});
    if (b.max_premises >= 2)
        for (std::size_t i = 0; i < universe.size() && i < 4; ++i)
            for (std::size_t j = i + 1; j < universe.size() && j < 4; ++j)
                gammas.push_back({universe[i], universe[j]});
    std::vector<Formula> deltas = first_n(4);

    { // reflexivity
        std::size_t n = 0, unknowns = 0;
        bool failed = false;
        std::string witness;
        for (const auto& f : first_n(12)) {
            ++n;
            Verdict v = l.oracle->entails({f}, f);
            if (v == Verdict::False) {
                failed = true;
                witness = to_string(f) + " |- " + to_string(f) + " fails";
                break;
            }
            if (v == Verdict::Unknown)
                ++unknowns;
        }
        std::string inst = "reflexivity (" + std::to_string(n) + " samples)";
        if (failed)
            r.fail(inst, witness);
        else if (unknowns)
            r.inconclusive(inst, std::to_string(unknowns) + " undecided");
        else
            r.pass(inst);
    }
    { // monotonicity
        std::size_t n = 0, unknowns = 0;
        bool failed = false;
        std::string witness;
        for (const auto& g : gammas) {
            if (failed)
                break;
            for (const auto& f : samples) {
                if (failed)
                    break;
                if (l.oracle->entails(g, f) != Verdict::True)
                    continue;
                for (const auto& d : deltas) {
                    std::vector<Formula> g2 = g;
                    g2.push_back(d);
                    ++n;
                    Verdict v = l.oracle->entails(g2, f);
                    if (v == Verdict::False) {
                        failed = true;
                        witness = detail::formulas_str(g) + " |- " + to_string(f) +
                                  " but adding " + to_string(d) + " breaks it";
                        break;
                    }
                    if (v == Verdict::Unknown)
                        ++unknowns;
                }
            }
        }
        std::string inst = "monotonicity (" + std::to_string(n) + " extensions)";
        if (failed)
            r.fail(inst, witness);
        else if (unknowns)
            r.inconclusive(inst, std::to_string(unknowns) + " undecided");
        else
            r.pass(inst);
    }
    { // cut
        std::size_t n = 0, unknowns = 0;
        bool failed = false;
        std::string witness;
        std::vector<Formula> cut_samples = first_n(6);
        for (const auto& g : gammas) {
            if (failed)
                break;
            for (const auto& psi : cut_samples) {
                if (failed)
                    break;
                if (l.oracle->entails(g, psi) != Verdict::True)
                    continue;
                std::vector<Formula> g2 = g;
                g2.push_back(psi);
                for (const auto& phi : cut_samples) {
                    if (l.oracle->entails(g2, phi) != Verdict::True)
                        continue;
                    ++n;
                    Verdict v = l.oracle->entails(g, phi);
                    if (v == Verdict::False) {
                        failed = true;
                        witness = "cut through " + to_string(psi) + " fails for " +
                                  to_string(phi);
                        break;
                    }
                    if (v == Verdict::Unknown)
                        ++unknowns;
                }
            }
        }
        std::string inst = "cut (" + std::to_string(n) + " instances)";
        if (failed)
            r.fail(inst, witness);
        else if (unknowns)
            r.inconclusive(inst, std::to_string(unknowns) + " undecided");
        else
            r.pass(inst);
    }
    { // structurality
        std::vector<std::map<int, Formula>> subs;
        if (b.nvars >= 2)
            subs.push_back({{0, Formula::var(1)}, {1, Formula::var(0)}});
        Formula app1 = universe.back(); // deepest enumerated formula
        subs.push_back({{0, app1}, {1, app1}});
        for (const Formula& f : universe)
            if (!f.is_var()) {
                std::map<int, Formula> s;
                s.emplace(0, f);
                if (b.nvars >= 2)
                    s.emplace(1, Formula::var(0));
                subs.push_back(std::move(s));
                break;
            }
        std::size_t n = 0, unknowns = 0;
        bool failed = false;
        std::string witness;
        for (const auto& g : gammas) {
            if (failed)
                break;
            for (const auto& f : first_n(6)) {
                if (failed)
                    break;
                if (l.oracle->entails(g, f) != Verdict::True)
                    continue;
                for (const auto& s : subs) {
                    std::vector<Formula> gs;
                    for (const auto& p : g)
                        gs.push_back(substitute(p, s));
                    ++n;
                    Verdict v = l.oracle->entails(gs, substitute(f, s));
                    if (v == Verdict::False) {
                        failed = true;
                        witness = "substitution instance of |- " + to_string(f) + " fails";
                        break;
                    }
                    if (v == Verdict::Unknown)
                        ++unknowns;
                }
            }
        }
        std::string inst = "structurality (" + std::to_string(n) + " instances)";
        if (failed)
            r.fail(inst, witness);
        else if (unknowns)
            r.inconclusive(inst, std::to_string(unknowns) + " undecided");
        else
            r.pass(inst);
    }
    return r;
}

} // namespace lwb
