#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lwb/algebraization.hpp"
#include "lwb/checks.hpp"
#include "lwb/quasivariety.hpp"

namespace lwb {

// Interpret every source connective in an algebra over the target signature
// via the morphism's schemas.  The carrier is untouched.
inline FiniteAlgebra reduct(const FlexMorphism& t, const FiniteAlgebra& mprime) {
    if (!(mprime.sig() == t.target()))
        throw Error("reduct: " + mprime.name() + " is not over the target signature of " +
                    t.name());
    const int n = mprime.size();
    std::map<std::string, std::vector<int>> tables;
    for (const auto& [arity, names] : t.source().conns()) {
        for (const auto& c : names) {
            std::size_t rows = 1;
            for (int i = 0; i < arity; ++i)
                rows *= static_cast<std::size_t>(n);
            std::vector<int> tbl(rows);
            std::vector<int> env(static_cast<std::size_t>(arity), 0);
            for (std::size_t row = 0; row < rows; ++row) {
                std::size_t rest = row;
                for (int i = arity - 1; i >= 0; --i) {
                    env[static_cast<std::size_t>(i)] = static_cast<int>(rest % n);
                    rest /= static_cast<std::size_t>(n);
                }
                tbl[row] = eval_term(mprime, t.schema(c), env);
            }
            tables.emplace(c, std::move(tbl));
        }
    }
    std::string fname = t.name().empty() ? "reduct" : t.name() + "*";
    return FiniteAlgebra(t.source(), n, std::move(tables), fname + "(" + mprime.name() + ")");
}

// A morphism viewed as a functor on finite algebras: schemas interpret
// objects, underlying maps of homomorphisms are unchanged.
struct ReductFunctor {
    FlexMorphism t;

    FiniteAlgebra on_object(const FiniteAlgebra& m) const { return reduct(t, m); }
};

inline bool same_operation_tables(const FiniteAlgebra& a, const FiniteAlgebra& b) {
    return a.sig() == b.sig() && a.size() == b.size() && a.tables() == b.tables();
}

namespace detail {

inline std::string map_str(const std::vector<int>& f) {
    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i)
        out += (i ? ", " : "") + std::to_string(i) + "->" + std::to_string(f[i]);
    return out;
}

} // namespace detail

// Reducts of quasivariety members stay inside the source quasivariety.
inline Report check_qv_restriction(const FlexMorphism& t, const QuasivarietySpec& qv_src,
                                   const QuasivarietySpec& qv_tgt,
                                   const std::vector<FiniteAlgebra>& catalog_tgt) {
    if (!(qv_src.sig() == t.source()) || !(qv_tgt.sig() == t.target()))
        throw Error("check_qv_restriction: quasivariety signatures do not match " + t.name());
    Report r("quasivariety restriction",
             (t.name().empty() ? "reduct" : t.name()) + ": " + qv_tgt.name() + " -> " +
                 qv_src.name());
    for (const auto& m : catalog_tgt) {
        MembershipResult pre = in_quasivariety(m, qv_tgt);
        if (!pre.member) {
            r.fail("catalog member " + m.name() + " lies in " + qv_tgt.name(), pre.witness);
            continue;
        }
        MembershipResult post = in_quasivariety(reduct(t, m), qv_src);
        std::string inst = "reduct of " + m.name() + " lies in " + qv_src.name();
        if (post.member)
            r.pass(inst);
        else
            r.fail(inst, post.witness);
    }
    return r;
}

// One component of the comparison map between "reflect then reduce" and
// "reduce then reflect": the reflection congruence of the reduct must refine
// the one of the full algebra, and the block-collapsing map is a surjective
// homomorphism.
struct EpiComponent {
    FiniteAlgebra domain;    // reflection of the reduct
    FiniteAlgebra codomain;  // reduct of the reflection
    std::vector<int> map;    // domain block -> codomain block
    ReflectResult reduct_reflection;
    ReflectResult full_reflection;
    Report report;

    EpiComponent(FiniteAlgebra d, FiniteAlgebra c, ReflectResult rr, ReflectResult fr,
                 Report rep)
        : domain(std::move(d)), codomain(std::move(c)), reduct_reflection(std::move(rr)),
          full_reflection(std::move(fr)), report(std::move(rep)) {}
};

inline EpiComponent natural_epi_component(const FlexMorphism& t, const FiniteAlgebra& mprime,
                                          const QuasivarietySpec& qv_src,
                                          const QuasivarietySpec& qv_tgt) {
    if (!(mprime.sig() == t.target()))
        throw Error("natural_epi_component: " + mprime.name() +
                    " is not over the target signature");
    Report rep("natural comparison component", mprime.name());
    ReflectResult rr = reflect(reduct(t, mprime), qv_src);
    ReflectResult fr = reflect(mprime, qv_tgt);
    for (int x = 0; x < mprime.size(); ++x) {
        for (int y = x + 1; y < mprime.size(); ++y) {
            if (rr.theta.same(x, y) && !fr.theta.same(x, y))
                throw Error("natural_epi_component: the reduct reflection of " + mprime.name() +
                            " does not refine the full reflection (elements " +
                            std::to_string(x) + ", " + std::to_string(y) + ")");
        }
    }
    rep.pass("reduct reflection refines the full reflection");
    FiniteAlgebra codom = reduct(t, fr.algebra);
    FiniteAlgebra dom = rr.algebra;
    EpiComponent out(std::move(dom), std::move(codom), std::move(rr), std::move(fr),
                     std::move(rep));
    out.map.assign(static_cast<std::size_t>(out.domain.size()), -1);
    for (int x = 0; x < mprime.size(); ++x)
        out.map[static_cast<std::size_t>(out.reduct_reflection.projection[static_cast<std::size_t>(x)])] =
            out.full_reflection.projection[static_cast<std::size_t>(x)];
    if (is_hom(out.domain, out.codomain, out.map))
        out.report.pass("component is a homomorphism");
    else
        out.report.fail("component is a homomorphism", detail::map_str(out.map));
    std::vector<char> hit(static_cast<std::size_t>(out.codomain.size()), 0);
    for (int v : out.map)
        hit[static_cast<std::size_t>(v)] = 1;
    bool surj = std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
    if (surj)
        out.report.pass("component is surjective (" + std::to_string(out.domain.size()) +
                        " blocks onto " + std::to_string(out.codomain.size()) + ")");
    else
        out.report.fail("component is surjective", detail::map_str(out.map));
    return out;
}

// Components over a whole catalog, plus commuting squares over every
// homomorphism between catalog members.
inline Report check_natural_epi(const FlexMorphism& t, const QuasivarietySpec& qv_src,
                                const QuasivarietySpec& qv_tgt,
                                const std::vector<FiniteAlgebra>& catalog) {
    Report r("natural comparison",
             (t.name().empty() ? "reduct" : t.name()) + " over " + std::to_string(catalog.size()) +
                 " algebras");
    std::vector<EpiComponent> comps;
    for (const auto& m : catalog) {
        comps.push_back(natural_epi_component(t, m, qv_src, qv_tgt));
        r.absorb(comps.back().report);
    }
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        for (std::size_t j = 0; j < catalog.size(); ++j) {
            auto homs = enumerate_homs(catalog[i], catalog[j]);
            std::string witness;
            const auto& pm = comps[i];
            const auto& pn = comps[j];
            for (const auto& g : homs) {
                // the reflector sends g to a map on blocks; both reflections
                // must let g descend, and the two routes around the square
                // must agree on every block
                for (int x = 0; x < catalog[i].size() && witness.empty(); ++x) {
                    int gx = g[static_cast<std::size_t>(x)];
                    for (int y = x + 1; y < catalog[i].size(); ++y) {
                        int gy = g[static_cast<std::size_t>(y)];
                        bool same_m = pm.reduct_reflection.theta.same(x, y);
                        bool same_n = pn.reduct_reflection.theta.same(gx, gy);
                        if (same_m && !same_n) {
                            witness = "reduct reflection of " + detail::map_str(g) +
                                      " does not descend at " + std::to_string(x) + "," +
                                      std::to_string(y);
                            break;
                        }
                        if (pm.full_reflection.theta.same(x, y) &&
                            !pn.full_reflection.theta.same(gx, gy)) {
                            witness = "full reflection of " + detail::map_str(g) +
                                      " does not descend at " + std::to_string(x) + "," +
                                      std::to_string(y);
                            break;
                        }
                    }
                    if (witness.empty()) {
                        int via_codomain =
                            pn.map[static_cast<std::size_t>(pn.reduct_reflection.projection[static_cast<std::size_t>(gx)])];
                        int via_domain =
                            pn.full_reflection.projection[static_cast<std::size_t>(gx)];
                        if (via_codomain != via_domain)
                            witness = "routes disagree at " + std::to_string(x) + " under " +
                                      detail::map_str(g);
                    }
                }
                if (!witness.empty())
                    break;
            }
            std::string inst = "naturality over " + std::to_string(homs.size()) + " homs " +
                               catalog[i].name() + " -> " + catalog[j].name();
            if (witness.empty())
                r.pass(inst);
            else
                r.fail(inst, witness);
        }
    }
    return r;
}

// Fullness, faithfulness and object-injectivity of the reduct functor on a
// catalog: reduct homs must lift, underlying maps are preserved, distinct
// algebras keep distinct reducts.
inline Report check_full_faithful(const FlexMorphism& t,
                                  const std::vector<FiniteAlgebra>& catalog) {
    Report r("full and faithful",
             (t.name().empty() ? "reduct" : t.name()) + " on " + std::to_string(catalog.size()) +
                 " algebras");
    std::vector<FiniteAlgebra> reds;
    for (const auto& m : catalog)
        reds.push_back(reduct(t, m));
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        for (std::size_t j = 0; j < catalog.size(); ++j) {
            auto full = enumerate_homs(catalog[i], catalog[j]);
            auto red = enumerate_homs(reds[i], reds[j]);
            std::string pairname = catalog[i].name() + " -> " + catalog[j].name();
            // faithfulness: a hom of the full algebras is still a hom of the
            // reducts, with the same underlying map
            bool faithful = std::includes(red.begin(), red.end(), full.begin(), full.end());
            std::string finst =
                "underlying maps preserved, " + pairname + " (" + std::to_string(full.size()) +
                " homs)";
            faithful ? r.pass(finst) : r.fail(finst, "a structure hom is not a reduct hom");
            // fullness: every reduct hom lifts
            std::string inst = "every reduct hom lifts, " + pairname + " (" +
                               std::to_string(red.size()) + " vs " +
                               std::to_string(full.size()) + ")";
            if (std::includes(full.begin(), full.end(), red.begin(), red.end())) {
                r.pass(inst);
            } else {
                std::vector<int> missing;
                for (const auto& g : red)
                    if (!std::binary_search(full.begin(), full.end(), g)) {
                        missing = g;
                        break;
                    }
                r.fail(inst, detail::map_str(missing) + " preserves the reduct only");
            }
        }
    }
    std::size_t pairs = 0;
    std::string witness;
    for (std::size_t i = 0; i < catalog.size() && witness.empty(); ++i) {
        for (std::size_t j = i + 1; j < catalog.size(); ++j) {
            if (same_operation_tables(catalog[i], catalog[j]))
                continue;
            ++pairs;
            if (same_operation_tables(reds[i], reds[j])) {
                witness = catalog[i].name() + " and " + catalog[j].name() +
                          " share their reduct tables";
                break;
            }
        }
    }
    std::string inst = "distinct algebras keep distinct reducts (" + std::to_string(pairs) +
                       " pairs)";
    witness.empty() ? r.pass(inst) : r.fail(inst, witness);
    return r;
}

// Recover the defining morphism of a reduct functor from its action: each
// connective is sent to its interpreting schema.  Verifies that schemas only
// use the variables of their arguments, on the schemas themselves and on a
// small enumerated sample of lifted formulas.
inline FlexMorphism extract_translation(const ReductFunctor& h, int nmax) {
    std::map<std::string, Formula> schemas;
    bool strict_shape = true;
    for (const auto& [arity, names] : h.t.source().conns()) {
        if (arity > nmax)
            throw Error("extract_translation: connective arity " + std::to_string(arity) +
                        " exceeds the bound " + std::to_string(nmax));
        for (const auto& c : names) {
            Formula schema = h.t.schema(c);
            if (schema.var_span() > arity)
                throw Error("extract_translation: schema of " + c +
                            " uses variables beyond its arity (variable preservation fails)");
            schemas.emplace(c, schema);
            bool atom = !schema.is_var() && static_cast<int>(schema.args().size()) == arity;
            if (atom)
                for (int i = 0; i < arity; ++i)
                    atom = atom && schema.args()[static_cast<std::size_t>(i)].is_var() &&
                           schema.args()[static_cast<std::size_t>(i)].var_index() == i;
            strict_shape = strict_shape && atom;
        }
    }
    // spot check: lifting never introduces variables
    for (const Formula& psi : enumerate_formulas(h.t.source(), 2, 2, 100000)) {
        std::set<int> before = psi.vars();
        for (int v : h.t.lift(psi).vars())
            if (!before.count(v))
                throw Error("extract_translation: lifting " + to_string(psi) +
                            " introduces x" + std::to_string(v) +
                            " (variable preservation fails)");
    }
    std::string name = "m(" + (h.t.name().empty() ? "reduct" : h.t.name()) + ")";
    if (strict_shape) {
        std::map<std::string, std::string> conn_map;
        for (const auto& [c, schema] : schemas)
            conn_map.emplace(c, schema.conn());
        return FlexMorphism::strict(h.t.source(), h.t.target(), conn_map, name);
    }
    return FlexMorphism::flexible(h.t.source(), h.t.target(), std::move(schemas), name);
}

// Extracting a translation from the functor a morphism induces must give the
// morphism back: syntactically when strict, up to interderivability in the
// target logic otherwise.
inline Report roundtrip_check(const FlexMorphism& h, const Logic& l2,
                              const CheckBounds& b = {}) {
    if (!(h.target() == l2.sig))
        throw Error("roundtrip_check: " + h.name() + " does not land in " + l2.name);
    Report r("translation round trip", h.name().empty() ? "morphism" : h.name());
    int nmax = 0;
    for (const auto& [arity, names] : h.source().conns())
        nmax = std::max(nmax, arity);
    FlexMorphism m = extract_translation(ReductFunctor{h}, nmax);
    const auto* to = detail::matrix_oracle(l2);
    for (const std::string& c : h.source().all_conns()) {
        const int arity = h.source().arity_of(c);
        std::string inst = "connective " + c;
        if (m.schema(c) == h.schema(c)) {
            r.pass(inst);
            continue;
        }
        if (h.is_strict()) {
            r.fail(inst, to_string(m.schema(c)) + " differs from " + to_string(h.schema(c)));
            continue;
        }
        if (to) {
            FamilyEval fe(to->family(), std::max(arity, 1));
            if (fe.des_mask(fe.eval(m.schema(c))) == fe.des_mask(fe.eval(h.schema(c))))
                r.pass(inst);
            else
                r.fail(inst, to_string(m.schema(c)) + " is not interderivable with " +
                                 to_string(h.schema(c)));
        } else {
            Verdict v1 = l2.oracle->entails({m.schema(c)}, h.schema(c));
            Verdict v2 = l2.oracle->entails({h.schema(c)}, m.schema(c));
            if (v1 == Verdict::False || v2 == Verdict::False)
                r.fail(inst, to_string(m.schema(c)) + " is not interderivable with " +
                                 to_string(h.schema(c)));
            else if (v1 == Verdict::Unknown || v2 == Verdict::Unknown)
                r.inconclusive(inst);
            else
                r.pass(inst);
        }
    }
    // strictness must survive the round trip
    if (h.is_strict())
        h.is_strict() == m.is_strict()
            ? r.pass("strictness preserved")
            : r.fail("strictness preserved", "extraction produced a flexible morphism");
    (void)b;
    return r;
}

// Consequence pulled back along a morphism: premises and conclusion are
// lifted into the target logic.
class PullbackOracle : public ConsequenceOracle {
public:
    PullbackOracle(FlexMorphism h, std::shared_ptr<const ConsequenceOracle> target)
        : h_(std::move(h)), target_(std::move(target)) {
        if (!target_)
            throw Error("pullback oracle: missing target oracle");
        if (!(target_->sig() == h_.target()))
            throw Error("pullback oracle: morphism does not land in the target oracle");
    }

    const Signature& sig() const override { return h_.source(); }
    bool exact() const override { return target_->exact(); }
    std::string describe() const override {
        return "pullback along " + (h_.name().empty() ? "a morphism" : h_.name()) + " of " +
               target_->describe();
    }

    Verdict entails(const std::vector<Formula>& premises,
                    const Formula& conclusion) const override {
        std::vector<Formula> lifted;
        lifted.reserve(premises.size());
        for (const auto& p : premises)
            lifted.push_back(h_.lift(p));
        return target_->entails(lifted, h_.lift(conclusion));
    }

    bool has_fingerprint() const override { return target_->has_fingerprint(); }
    bool fingerprint_complete() const override { return target_->fingerprint_complete(); }
    std::vector<int> fingerprint(const Formula& f, int nvars) const override {
        return target_->fingerprint(h_.lift(f), nvars);
    }

    const FlexMorphism& morphism() const { return h_; }

private:
    FlexMorphism h_;
    std::shared_ptr<const ConsequenceOracle> target_;
};

// Quotient of a logic's signature by "same image": connectives are merged
// when their translated images coincide syntactically, giving a smaller
// logic between the two given ones.
struct QuotientLogicResult {
    Signature alpha;
    FlexMorphism f; // strict level-wise surjection from the source signature
    FlexMorphism h; // embedding of the quotient into the far target
    std::optional<Logic> a;
    std::optional<AlgebraizingPair> pair; // rewritten pair when one was supplied
    Report report;

    QuotientLogicResult(Signature al, FlexMorphism ff, FlexMorphism hh, Report rep)
        : alpha(std::move(al)), f(std::move(ff)), h(std::move(hh)), report(std::move(rep)) {}
};

namespace detail {

// first enumerated source formula whose image is interderivable with the
// target connective applied to variables
inline std::optional<Formula> dense_witness(const Logic& src, const Logic& tgt,
                                            const FlexMorphism& t, const std::string& conn,
                                            const CheckBounds& b) {
    const int arity = tgt.sig.arity_of(conn);
    std::vector<Formula> xs;
    for (int i = 0; i < arity; ++i)
        xs.push_back(Formula::var(i));
    Formula goal = Formula::app(tgt.sig, conn, xs);
    const int nv = std::max(b.nvars, arity);
    const auto* to = matrix_oracle(tgt);
    if (to) {
        FamilyEval tf(to->family(), nv);
        PullbackEval pe(t, to->family(), nv);
        Mask goal_mask = tf.des_mask(tf.eval(goal));
        for (const Formula& f : enumerate_formulas(src.sig, b.nvars, b.depth, 500000))
            if (pe.des_mask(pe.eval(f)) == goal_mask)
                return f;
        return std::nullopt;
    }
    std::size_t budget = 4000;
    for (const Formula& f : enumerate_formulas(src.sig, b.nvars, b.depth, 100000)) {
        if (budget < 2)
            break;
        budget -= 2;
        Formula img = t.lift(f);
        if (tgt.oracle->entails({img}, goal) == Verdict::True &&
            tgt.oracle->entails({goal}, img) == Verdict::True)
            return f;
    }
    return std::nullopt;
}

// replace every connective by its preimage schema
inline Formula rewrite_through(const Formula& f,
                               const std::map<std::string, Formula>& preimages) {
    if (f.is_var())
        return f;
    std::vector<Formula> args;
    args.reserve(f.args().size());
    for (const auto& a : f.args())
        args.push_back(rewrite_through(a, preimages));
    auto it = preimages.find(f.conn());
    if (it == preimages.end())
        throw Error("rewrite: no preimage for connective " + f.conn());
    std::map<int, Formula> env;
    for (std::size_t i = 0; i < args.size(); ++i)
        env.emplace(static_cast<int>(i), args[i]);
    return substitute(it->second, env);
}

} // namespace detail

inline QuotientLogicResult construct_quotient_logic(
    const Logic& l, const Logic& lprime, const Logic& aprime, const FlexMorphism& t,
    const FlexMorphism& fprime, const std::optional<AlgebraizingPair>& pair_aprime = {},
    const CheckBounds& b = {}) {
    detail::require_morphism(t, l, lprime);
    detail::require_morphism(fprime, lprime, aprime);
    Report rep("quotient logic", l.name + " via " + aprime.name);

    // group connectives by the image of c(x0..x{n-1}) under f' after t
    std::map<int, std::vector<std::string>> alpha_conns;
    std::map<std::string, std::string> f_map;       // source conn -> class name
    std::map<std::string, Formula> h_schemas;       // class name -> image
    std::map<int, std::map<std::string, std::string>> class_by_key; // arity -> image -> name
    for (const auto& [arity, names] : l.sig.conns()) {
        for (const auto& c : names) {
            std::vector<Formula> xs;
            for (int i = 0; i < arity; ++i)
                xs.push_back(Formula::var(i));
            Formula image = fprime.lift(t.lift(Formula::app(l.sig, c, xs)));
            std::string key = to_string(image);
            auto [it, fresh] = class_by_key[arity].emplace(key, c);
            if (fresh) {
                alpha_conns[arity].push_back(c);
                h_schemas.emplace(c, image);
            } else if (!(h_schemas.at(it->second) == image)) {
                throw Error("construct_quotient_logic: the induced morphism is not unique");
            }
            f_map.emplace(c, it->second);
        }
    }
    Signature alpha("quotient of " + l.sig.name(), alpha_conns);
    FlexMorphism f = FlexMorphism::strict(l.sig, alpha, f_map, "projection");
    FlexMorphism h = FlexMorphism::flexible(alpha, aprime.sig, h_schemas, "embedding");

    // every class has a representative at its own arity, so f is surjective
    // on each level
    std::size_t merged = 0;
    for (const auto& [arity, names] : l.sig.conns())
        merged += names.size();
    for (const auto& [arity, names] : alpha.conns())
        merged -= names.size();
    rep.pass("projection is surjective per arity (" + std::to_string(merged) +
             " connectives merged)");

    QuotientLogicResult out(alpha, std::move(f), std::move(h), Report("", ""));

    // pull the consequence of the far target back along h; a matrix family
    // pulls back to the family of reducts
    std::shared_ptr<const ConsequenceOracle> oracle;
    if (const auto* mo = detail::matrix_oracle(aprime)) {
        std::vector<LogicalMatrix> family;
        for (const auto& mx : mo->family())
            family.emplace_back(reduct(out.h, mx.algebra()), mx.designated(), mx.name());
        oracle = std::make_shared<MatrixFamilyOracle>(alpha, std::move(family));
    } else {
        oracle = std::make_shared<PullbackOracle>(out.h, aprime.oracle);
    }
    out.a.emplace("quotient(" + l.name + ")", alpha, oracle);

    rep.absorb(check_dense(*out.a, aprime, out.h, b));
    rep.absorb(check_conservative(*out.a, aprime, out.h, b));

    if (pair_aprime) {
        std::map<std::string, Formula> preimages;
        bool complete = true;
        for (const std::string& c : aprime.sig.all_conns()) {
            auto w = detail::dense_witness(*out.a, aprime, out.h, c, b);
            if (!w) {
                complete = false;
                rep.inconclusive("algebraizing pair rewriting",
                                 "no preimage found for connective " + c);
                break;
            }
            preimages.emplace(c, *w);
        }
        if (complete) {
            AlgebraizingPair q;
            for (const auto& d : pair_aprime->delta)
                q.delta.push_back(detail::rewrite_through(d, preimages));
            for (const auto& e : pair_aprime->epsilon)
                q.epsilon.push_back(detail::rewrite_through(e, preimages));
            for (const auto& d : pair_aprime->equiv)
                q.equiv.push_back(detail::rewrite_through(d, preimages));
            q.validate(alpha);
            out.pair = q;
            rep.absorb(check_lindenbaum(*out.a, q, CheckBounds{b.nvars, b.depth, b.max_premises}));
        }
    }
    out.report = std::move(rep);
    return out;
}

// ---- Heyting/Boolean structure checks and the double-negation reflection ----

namespace detail {

struct LatticeView {
    int top = -1;
    int bot = -1;
};

inline bool leq(const FiniteAlgebra& a, int x, int y) {
    std::array<int, 2> args{x, y};
    return a.apply("and", args) == x;
}

} // namespace detail

// Table-level Heyting algebra test: bounded lattice via and/or plus the
// residuation property of imp, and neg agreeing with imp into bottom.
inline bool is_heyting(const FiniteAlgebra& a, std::string* why = nullptr) {
    auto reject = [&](const std::string& msg) {
        if (why)
            *why = msg;
        return false;
    };
    for (const char* c : {"and", "or", "imp"})
        if (!a.sig().contains(c) || a.sig().arity_of(c) != 2)
            return reject(std::string("missing binary connective ") + c);
    if (!a.sig().contains("neg") || a.sig().arity_of("neg") != 1)
        return reject("missing unary connective neg");
    const int n = a.size();
    auto ap2 = [&](const char* c, int x, int y) {
        std::array<int, 2> args{x, y};
        return a.apply(c, args);
    };
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (ap2("and", x, y) != ap2("and", y, x) || ap2("or", x, y) != ap2("or", y, x))
                return reject("meet or join is not commutative");
            if (ap2("and", x, ap2("or", x, y)) != x || ap2("or", x, ap2("and", x, y)) != x)
                return reject("absorption fails");
            for (int z = 0; z < n; ++z) {
                if (ap2("and", x, ap2("and", y, z)) != ap2("and", ap2("and", x, y), z))
                    return reject("meet is not associative");
                if (ap2("or", x, ap2("or", y, z)) != ap2("or", ap2("or", x, y), z))
                    return reject("join is not associative");
            }
        }
    }
    detail::LatticeView lv;
    for (int x = 0; x < n; ++x) {
        bool istop = true, isbot = true;
        for (int y = 0; y < n; ++y) {
            istop = istop && detail::leq(a, y, x);
            isbot = isbot && detail::leq(a, x, y);
        }
        if (istop)
            lv.top = x;
        if (isbot)
            lv.bot = x;
    }
    if (lv.top < 0 || lv.bot < 0)
        return reject("lattice is not bounded");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                bool left = detail::leq(a, ap2("and", x, y), z);
                bool right = detail::leq(a, x, ap2("imp", y, z));
                if (left != right)
                    return reject("residuation fails at (" + std::to_string(x) + "," +
                                  std::to_string(y) + "," + std::to_string(z) + ")");
            }
    for (int x = 0; x < n; ++x) {
        std::array<int, 1> ax{x};
        if (a.apply("neg", ax) != ap2("imp", x, lv.bot))
            return reject("neg differs from imp into bottom at " + std::to_string(x));
    }
    return true;
}

inline bool is_boolean(const FiniteAlgebra& a, std::string* why = nullptr) {
    if (!is_heyting(a, why))
        return false;
    int top = -1;
    for (int x = 0; x < a.size(); ++x) {
        bool istop = true;
        for (int y = 0; y < a.size(); ++y)
            istop = istop && detail::leq(a, y, x);
        if (istop)
            top = x;
    }
    for (int x = 0; x < a.size(); ++x) {
        std::array<int, 1> ax{x};
        int nx = a.apply("neg", ax);
        std::array<int, 2> args{x, nx};
        if (a.apply("or", args) != top) {
            if (why)
                *why = "excluded middle fails at " + std::to_string(x);
            return false;
        }
    }
    return true;
}

inline int top_of(const FiniteAlgebra& a) {
    for (int x = 0; x < a.size(); ++x) {
        bool istop = true;
        for (int y = 0; y < a.size(); ++y)
            istop = istop && detail::leq(a, y, x);
        if (istop)
            return x;
    }
    throw Error("top_of: no greatest element");
}

// elements whose double negation is the top
inline std::vector<int> dense_elements(const FiniteAlgebra& a) {
    const int top = top_of(a);
    std::vector<int> out;
    for (int x = 0; x < a.size(); ++x) {
        std::array<int, 1> ax{x};
        int nx = a.apply("neg", ax);
        std::array<int, 1> anx{nx};
        if (a.apply("neg", anx) == top)
            out.push_back(x);
    }
    return out;
}

struct GlivenkoResult {
    FiniteAlgebra quotient;
    std::vector<int> projection;
    Congruence theta;
    std::vector<int> filter; // ascending element indices
};

// Collapse a Heyting algebra to its Boolean quotient by the filter of
// double-negation-stable equivalences.
inline GlivenkoResult glivenko_reflect(const FiniteAlgebra& h) {
    std::string why;
    if (!is_heyting(h, &why))
        throw Error("glivenko_reflect: " + h.name() + " is not a Heyting algebra: " + why);
    const int top = top_of(h);
    auto ap2 = [&](const char* c, int x, int y) {
        std::array<int, 2> args{x, y};
        return h.apply(c, args);
    };
    auto neg = [&](int x) {
        std::array<int, 1> ax{x};
        return h.apply("neg", ax);
    };
    std::vector<char> in(static_cast<std::size_t>(h.size()), 0);
    in[static_cast<std::size_t>(top)] = 1;
    for (int a = 0; a < h.size(); ++a) {
        int u = ap2("and", ap2("imp", a, neg(neg(a))), ap2("imp", neg(neg(a)), a));
        in[static_cast<std::size_t>(u)] = 1;
    }
    // close under meet, then upward
    bool grew = true;
    while (grew) {
        grew = false;
        for (int x = 0; x < h.size(); ++x) {
            if (!in[static_cast<std::size_t>(x)])
                continue;
            for (int y = 0; y < h.size(); ++y) {
                if (!in[static_cast<std::size_t>(y)])
                    continue;
                int m = ap2("and", x, y);
                if (!in[static_cast<std::size_t>(m)]) {
                    in[static_cast<std::size_t>(m)] = 1;
                    grew = true;
                }
            }
        }
        for (int x = 0; x < h.size(); ++x) {
            if (!in[static_cast<std::size_t>(x)])
                continue;
            for (int y = 0; y < h.size(); ++y) {
                if (detail::leq(h, x, y) && !in[static_cast<std::size_t>(y)]) {
                    in[static_cast<std::size_t>(y)] = 1;
                    grew = true;
                }
            }
        }
    }
    std::vector<int> filter;
    for (int x = 0; x < h.size(); ++x)
        if (in[static_cast<std::size_t>(x)])
            filter.push_back(x);
    std::vector<std::pair<int, int>> gens;
    for (int u : filter)
        gens.emplace_back(u, top);
    Congruence theta = congruence_generated(h, gens);
    QuotientResult q = quotient_algebra(h, theta);
    FiniteAlgebra named(q.algebra.sig(), q.algebra.size(), q.algebra.tables(),
                        "glivenko(" + h.name() + ")");
    std::string bwhy;
    if (!is_boolean(named, &bwhy))
        throw Error("glivenko_reflect: quotient of " + h.name() + " is not Boolean: " + bwhy);
    return GlivenkoResult{std::move(named), std::move(q.projection), std::move(theta),
                          std::move(filter)};
}

// Per-algebra sanity of the double-negation reflection over a catalog.
inline Report check_glivenko(const std::vector<FiniteAlgebra>& h_catalog) {
    Report r("double-negation reflection", std::to_string(h_catalog.size()) + " algebras");
    for (const auto& h : h_catalog) {
        std::string why;
        if (!is_heyting(h, &why)) {
            r.fail(h.name() + " satisfies the Heyting laws", why);
            continue;
        }
        r.pass(h.name() + " satisfies the Heyting laws");
        GlivenkoResult g = glivenko_reflect(h);
        std::vector<int> dense = dense_elements(h);
        std::string inst = h.name() + ": stabilizer filter equals the dense elements";
        if (g.filter == dense)
            r.add(inst, CheckVerdict::Pass,
                  std::to_string(g.filter.size()) + " of " + std::to_string(h.size()) +
                      " elements");
        else
            r.fail(inst, "filter size " + std::to_string(g.filter.size()) + " vs " +
                             std::to_string(dense.size()) + " dense elements");
        std::string binst = h.name() + ": quotient satisfies the Boolean laws";
        is_boolean(g.quotient, &why) ? r.pass(binst) : r.fail(binst, why);
        std::string qinst = h.name() + ": projection is a surjective homomorphism";
        bool ok = is_hom(h, g.quotient, g.projection);
        std::vector<char> hit(static_cast<std::size_t>(g.quotient.size()), 0);
        for (int v : g.projection)
            hit[static_cast<std::size_t>(v)] = 1;
        ok = ok && std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
        ok ? r.pass(qinst) : r.fail(qinst, detail::map_str(g.projection));
        // kernel classes are decided by the filter
        std::string kinst = h.name() + ": kernel classes decided by the filter";
        std::string kw;
        auto ap2 = [&](const char* c, int x, int y) {
            std::array<int, 2> args{x, y};
            return h.apply(c, args);
        };
        for (int x = 0; x < h.size() && kw.empty(); ++x) {
            for (int y = 0; y < h.size(); ++y) {
                int eq = ap2("and", ap2("imp", x, y), ap2("imp", y, x));
                bool infilter = std::binary_search(g.filter.begin(), g.filter.end(), eq);
                if (g.theta.same(x, y) != infilter) {
                    kw = "elements " + std::to_string(x) + ", " + std::to_string(y);
                    break;
                }
            }
        }
        kw.empty() ? r.pass(kinst) : r.fail(kinst, kw);
    }
    return r;
}

// Hom-set bijection of the reflection: maps into Boolean algebras factor
// uniquely through the double-negation quotient.
inline Report check_glivenko_adjunction(const std::vector<FiniteAlgebra>& h_catalog,
                                        const std::vector<FiniteAlgebra>& b_catalog) {
    Report r("reflection adjunction", std::to_string(h_catalog.size()) + " x " +
                                          std::to_string(b_catalog.size()) + " algebras");
    for (const auto& bb : b_catalog) {
        std::string why;
        if (!is_boolean(bb, &why)) {
            r.fail(bb.name() + " satisfies the Boolean laws", why);
            return r;
        }
        GlivenkoResult g = glivenko_reflect(bb);
        std::string inst = "reflection is trivial on " + bb.name();
        g.quotient.size() == bb.size() ? r.pass(inst)
                                       : r.fail(inst, std::to_string(g.quotient.size()) +
                                                          " blocks from " +
                                                          std::to_string(bb.size()) +
                                                          " elements");
    }
    for (const auto& h : h_catalog) {
        GlivenkoResult g = glivenko_reflect(h);
        for (const auto& bb : b_catalog) {
            auto down = enumerate_homs(h, bb);
            auto up = enumerate_homs(g.quotient, bb);
            std::string inst = "homs " + h.name() + " -> " + bb.name() +
                               " factor uniquely (" + std::to_string(down.size()) + " vs " +
                               std::to_string(up.size()) + ")";
            std::string witness;
            if (down.size() != up.size())
                witness = "hom counts differ";
            for (const auto& gmap : down) {
                if (!witness.empty())
                    break;
                // the factor map is forced by surjectivity of the projection
                std::vector<int> bar(static_cast<std::size_t>(g.quotient.size()), -1);
                for (int x = 0; x < h.size(); ++x) {
                    int blk = g.projection[static_cast<std::size_t>(x)];
                    int val = gmap[static_cast<std::size_t>(x)];
                    if (bar[static_cast<std::size_t>(blk)] >= 0 &&
                        bar[static_cast<std::size_t>(blk)] != val) {
                        witness = detail::map_str(gmap) + " does not descend";
                        break;
                    }
                    bar[static_cast<std::size_t>(blk)] = val;
                }
                if (witness.empty() && !std::binary_search(up.begin(), up.end(), bar))
                    witness = "descended map is not a homomorphism";
            }
            witness.empty() ? r.pass(inst) : r.fail(inst, witness);
        }
    }
    return r;
}

// ---- stable equivalence witnesses ----

struct MoritaWitness {
    FlexMorphism t;      // between the two signatures, forward
    FlexMorphism tprime; // backward
    QuasivarietySpec qv;
    QuasivarietySpec qvprime;
    std::vector<FiniteAlgebra> catalog;       // over t's source signature
    std::vector<FiniteAlgebra> catalog_prime; // over t's target signature
};

// Desk-scale equivalence: the two reduct functors restrict to the catalogs,
// compose to the identity on operation tables, and match catalog members
// across the two sides.
inline Report check_stable_morita(const MoritaWitness& w) {
    if (!(w.tprime.source() == w.t.target()) || !(w.tprime.target() == w.t.source()))
        throw Error("check_stable_morita: morphism directions do not compose");
    if (!(w.qv.sig() == w.t.source()) || !(w.qvprime.sig() == w.t.target()))
        throw Error("check_stable_morita: quasivariety signatures do not match the morphisms");
    for (const auto& m : w.catalog) {
        MembershipResult mr = in_quasivariety(m, w.qv);
        if (!mr.member)
            throw Error("check_stable_morita: catalog member " + m.name() + " is outside " +
                        w.qv.name() + ": " + mr.witness);
    }
    for (const auto& m : w.catalog_prime) {
        MembershipResult mr = in_quasivariety(m, w.qvprime);
        if (!mr.member)
            throw Error("check_stable_morita: catalog member " + m.name() + " is outside " +
                        w.qvprime.name() + ": " + mr.witness);
    }
    Report r("stable equivalence",
             (w.t.name().empty() ? "t" : w.t.name()) + " / " +
                 (w.tprime.name().empty() ? "t'" : w.tprime.name()));
    r.pass("catalog membership (" + std::to_string(w.catalog.size()) + " + " +
           std::to_string(w.catalog_prime.size()) + " algebras)");
    for (const auto& m : w.catalog) {
        FiniteAlgebra across = reduct(w.tprime, m);
        FiniteAlgebra back = reduct(w.t, across);
        std::string inst = "round trip restores " + m.name();
        same_operation_tables(back, m)
            ? r.pass(inst)
            : r.fail(inst, "operation tables differ after the round trip");
        bool matched = false;
        for (const auto& cand : w.catalog_prime)
            if (same_operation_tables(across, cand)) {
                matched = true;
                break;
            }
        std::string sq = "image of " + m.name() + " lands in the opposite catalog";
        matched ? r.pass(sq) : r.fail(sq, across.name() + " matches no catalog member");
    }
    for (const auto& m : w.catalog_prime) {
        FiniteAlgebra across = reduct(w.t, m);
        FiniteAlgebra back = reduct(w.tprime, across);
        std::string inst = "round trip restores " + m.name();
        same_operation_tables(back, m)
            ? r.pass(inst)
            : r.fail(inst, "operation tables differ after the round trip");
        bool matched = false;
        for (const auto& cand : w.catalog)
            if (same_operation_tables(across, cand)) {
                matched = true;
                break;
            }
        std::string sq = "image of " + m.name() + " lands in the opposite catalog";
        matched ? r.pass(sq) : r.fail(sq, across.name() + " matches no catalog member");
    }
    return r;
}

// Informational distinguisher: number of isomorphism classes in a catalog.
inline std::size_t count_iso_classes(const std::vector<FiniteAlgebra>& catalog) {
    std::vector<const FiniteAlgebra*> reps;
    for (const auto& m : catalog) {
        bool fresh = true;
        for (const auto* rep : reps)
            if (find_isomorphism(*rep, m)) {
                fresh = false;
                break;
            }
        if (fresh)
            reps.push_back(&m);
    }
    return reps.size();
}

} // namespace lwb
