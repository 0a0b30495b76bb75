#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lwb/algebra.hpp"
#include "lwb/enumerate.hpp"
#include "lwb/parse.hpp"

namespace lwb {

// construction size limit, overridable through the LWB_SIZE_CAP variable
inline std::size_t size_cap_from_env(std::size_t fallback = 100000) {
    if (const char* s = std::getenv("LWB_SIZE_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return fallback;
}

// premises => conclusion, all equations between terms in x0..x{k-1};
// an identity is the premise-free case.
struct QuasiIdentity {
    std::vector<std::pair<Formula, Formula>> premises;
    std::pair<Formula, Formula> conclusion;

    int var_count() const {
        int m = std::max(conclusion.first.var_span(), conclusion.second.var_span());
        for (const auto& [l, r] : premises)
            m = std::max({m, l.var_span(), r.var_span()});
        return m;
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < premises.size(); ++i) {
            if (i)
                out += " & ";
            out += to_string(premises[i].first) + " = " + to_string(premises[i].second);
        }
        if (!premises.empty())
            out += " => ";
        out += to_string(conclusion.first) + " = " + to_string(conclusion.second);
        return out;
    }

    // syntax: "p1 & p2 & ... => lhs = rhs" or "lhs = rhs"
    static QuasiIdentity parse(const std::string& text, const Signature& sig) {
        auto split_on = [](const std::string& s, const std::string& sep) {
            std::vector<std::string> parts;
            std::size_t from = 0;
            while (true) {
                std::size_t at = s.find(sep, from);
                if (at == std::string::npos) {
                    parts.push_back(s.substr(from));
                    return parts;
                }
                parts.push_back(s.substr(from, at - from));
                from = at + sep.size();
            }
        };
        auto parse_eq = [&](const std::string& s) {
            auto sides = split_on(s, "=");
            if (sides.size() != 2)
                throw Error("law '" + text + "': expected exactly one '=' in '" + s + "'");
            return std::make_pair(parse_formula(sides[0], sig), parse_formula(sides[1], sig));
        };
        QuasiIdentity law;
        auto main = split_on(text, "=>");
        if (main.size() > 2)
            throw Error("law '" + text + "': more than one '=>'");
        if (main.size() == 2) {
            for (const auto& p : split_on(main[0], "&"))
                law.premises.push_back(parse_eq(p));
            law.conclusion = parse_eq(main[1]);
        } else {
            law.conclusion = parse_eq(main[0]);
        }
        return law;
    }
};

inline std::vector<QuasiIdentity> parse_laws(const std::vector<std::string>& texts,
                                             const Signature& sig) {
    std::vector<QuasiIdentity> out;
    out.reserve(texts.size());
    for (const auto& t : texts)
        out.push_back(QuasiIdentity::parse(t, sig));
    return out;
}

// A quasivariety presented by laws, by a finite set of generating algebras,
// or both (cross-checked on every membership query when both are given).
class QuasivarietySpec {
public:
    QuasivarietySpec() = default;

    QuasivarietySpec(std::string name, Signature sig, std::vector<QuasiIdentity> laws,
                     std::vector<FiniteAlgebra> generators)
        : name_(std::move(name)), sig_(std::move(sig)), laws_(std::move(laws)),
          generators_(std::move(generators)), has_laws_(true), has_generators_(true) {
        validate();
    }

    static QuasivarietySpec from_laws(std::string name, Signature sig,
                                      std::vector<QuasiIdentity> laws) {
        QuasivarietySpec q;
        q.name_ = std::move(name);
        q.sig_ = std::move(sig);
        q.laws_ = std::move(laws);
        q.has_laws_ = true;
        q.validate();
        return q;
    }

    static QuasivarietySpec from_generators(std::string name, Signature sig,
                                            std::vector<FiniteAlgebra> generators) {
        QuasivarietySpec q;
        q.name_ = std::move(name);
        q.sig_ = std::move(sig);
        q.generators_ = std::move(generators);
        q.has_generators_ = true;
        q.validate();
        return q;
    }

    const std::string& name() const { return name_; }
    const Signature& sig() const { return sig_; }
    bool has_laws() const { return has_laws_; }
    bool has_generators() const { return has_generators_; }
    const std::vector<QuasiIdentity>& laws() const { return laws_; }
    const std::vector<FiniteAlgebra>& generators() const { return generators_; }

private:
    void validate() const {
        if (!has_laws_ && !has_generators_)
            throw Error("quasivariety " + name_ + ": needs laws or generators");
        for (const auto& law : laws_) {
            check_over(law.conclusion.first, sig_);
            check_over(law.conclusion.second, sig_);
            for (const auto& [l, r] : law.premises) {
                check_over(l, sig_);
                check_over(r, sig_);
            }
        }
        for (const auto& g : generators_)
            if (!(g.sig() == sig_))
                throw Error("quasivariety " + name_ + ": generator " + g.name() +
                            " has a different signature");
    }

    std::string name_;
    Signature sig_;
    std::vector<QuasiIdentity> laws_;
    std::vector<FiniteAlgebra> generators_;
    bool has_laws_ = false;
    bool has_generators_ = false;
};

struct MembershipResult {
    bool member = false;
    std::string witness; // failing law instance, or inseparable pair
};

namespace detail {

// first failing instance of a law in a, or nullopt
inline std::optional<std::string> law_violation(const FiniteAlgebra& a, const QuasiIdentity& law) {
    const int m = law.var_count();
    std::vector<int> env(static_cast<std::size_t>(m), 0);
    while (true) {
        bool premises_hold = true;
        for (const auto& [l, r] : law.premises) {
            if (eval_term(a, l, env) != eval_term(a, r, env)) {
                premises_hold = false;
                break;
            }
        }
        if (premises_hold &&
            eval_term(a, law.conclusion.first, env) != eval_term(a, law.conclusion.second, env)) {
            std::ostringstream os;
            os << law.str() << " fails at (";
            for (int i = 0; i < m; ++i)
                os << (i ? "," : "") << "x" << i << "=" << env[static_cast<std::size_t>(i)];
            os << ")";
            return os.str();
        }
        int j = m - 1;
        for (; j >= 0; --j) {
            if (++env[static_cast<std::size_t>(j)] < a.size())
                break;
            env[static_cast<std::size_t>(j)] = 0;
        }
        if (j < 0)
            break;
    }
    return std::nullopt;
}

inline MembershipResult member_by_laws(const FiniteAlgebra& a, const QuasivarietySpec& q) {
    for (const auto& law : q.laws())
        if (auto w = law_violation(a, law))
            return {false, *w};
    return {true, ""};
}

// membership in ISP(generators): the homs into the generators must jointly
// separate all pairs of points
inline MembershipResult member_by_generators(const FiniteAlgebra& a, const QuasivarietySpec& q) {
    std::vector<std::vector<char>> separated(
        static_cast<std::size_t>(a.size()),
        std::vector<char>(static_cast<std::size_t>(a.size()), 0));
    for (const auto& g : q.generators()) {
        for (const auto& h : enumerate_homs(a, g)) {
            for (int i = 0; i < a.size(); ++i)
                for (int j = i + 1; j < a.size(); ++j)
                    if (h[static_cast<std::size_t>(i)] != h[static_cast<std::size_t>(j)])
                        separated[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
        }
    }
    for (int i = 0; i < a.size(); ++i)
        for (int j = i + 1; j < a.size(); ++j)
            if (!separated[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                return {false, "no hom into the generators separates " + std::to_string(i) +
                                   " and " + std::to_string(j)};
    return {true, ""};
}

} // namespace detail

inline MembershipResult in_quasivariety(const FiniteAlgebra& a, const QuasivarietySpec& q) {
    if (!(a.sig() == q.sig()))
        throw Error("in_quasivariety: signature mismatch between " + a.name() + " and " +
                    q.name());
    if (q.has_laws() && q.has_generators()) {
        MembershipResult by_laws = detail::member_by_laws(a, q);
        MembershipResult by_gens = detail::member_by_generators(a, q);
        if (by_laws.member != by_gens.member)
            throw Error("quasivariety " + q.name() + ": laws and generators disagree on " +
                        a.name() + " (laws say " + (by_laws.member ? "yes" : "no") + ")");
        return by_laws.member ? by_laws : MembershipResult{false, by_laws.witness};
    }
    if (q.has_laws())
        return detail::member_by_laws(a, q);
    return detail::member_by_generators(a, q);
}

struct ExtractBounds {
    int max_vars = 2;
    int term_depth = 2;
    int max_premises = 1;
};

// Quasi-identities of a generator family, up to the given term bounds.
// Sound but bounded: the result axiomatizes the generated quasivariety only
// up to these term shapes.
inline std::vector<QuasiIdentity> extract_quasi_identities(
    const std::vector<FiniteAlgebra>& gens, const Signature& sig,
    const ExtractBounds& b = {}) {
    if (gens.empty())
        throw Error("extract_quasi_identities: no generators");
    std::vector<Formula> terms = enumerate_formulas(sig, b.max_vars, b.term_depth, 200000);
    // value profile of each term over all (generator, assignment) coordinates
    std::vector<std::vector<int>> profile(terms.size());
    for (std::size_t ti = 0; ti < terms.size(); ++ti) {
        for (const auto& g : gens) {
            std::vector<int> env(static_cast<std::size_t>(b.max_vars), 0);
            while (true) {
                profile[ti].push_back(eval_term(g, terms[ti], env));
                int j = b.max_vars - 1;
                for (; j >= 0; --j) {
                    if (++env[static_cast<std::size_t>(j)] < g.size())
                        break;
                    env[static_cast<std::size_t>(j)] = 0;
                }
                if (j < 0)
                    break;
            }
        }
    }
    std::vector<QuasiIdentity> out;
    // identities: each term equals the first term with its profile
    std::map<std::vector<int>, std::size_t> first_with;
    std::vector<std::size_t> reps;
    for (std::size_t ti = 0; ti < terms.size(); ++ti) {
        auto [it, fresh] = first_with.emplace(profile[ti], ti);
        if (fresh)
            reps.push_back(ti);
        else
            out.push_back(QuasiIdentity{{}, {terms[it->second], terms[ti]}});
    }
    if (b.max_premises < 1 || reps.size() > 64)
        return out;
    // single-premise quasi-identities between profile representatives
    const std::size_t w = profile.empty() ? 0 : profile[reps[0]].size();
    auto eq_mask = [&](std::size_t s, std::size_t t) {
        std::vector<char> m(w);
        for (std::size_t c = 0; c < w; ++c)
            m[c] = profile[s][c] == profile[t][c];
        return m;
    };
    std::vector<std::pair<std::size_t, std::size_t>> eqs;
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j)
            eqs.emplace_back(reps[i], reps[j]);
    for (const auto& [p1, p2] : eqs) {
        auto pm = eq_mask(p1, p2);
        for (const auto& [c1, c2] : eqs) {
            if (c1 == p1 && c2 == p2)
                continue;
            auto cm = eq_mask(c1, c2);
            bool valid = true, informative = false;
            for (std::size_t c = 0; c < w && valid; ++c) {
                if (pm[c] && !cm[c])
                    valid = false;
                if (!cm[c])
                    informative = true; // conclusion is not an identity outright
            }
            if (valid && informative)
                out.push_back(QuasiIdentity{{{terms[p1], terms[p2]}}, {terms[c1], terms[c2]}});
        }
    }
    return out;
}

struct ReflectResult {
    FiniteAlgebra algebra;
    std::vector<int> projection; // carrier of m -> carrier of the quotient
    Congruence theta;
    std::string provenance; // nonempty when laws were extracted from generators
};

// Least congruence whose quotient satisfies the quasivariety: repeatedly
// find a violated law instance in the current quotient and merge the
// conclusion pair.  Terminates because the block count strictly drops.
inline ReflectResult reflect(const FiniteAlgebra& m, const QuasivarietySpec& q) {
    if (!(m.sig() == q.sig()))
        throw Error("reflect: signature mismatch");
    std::vector<QuasiIdentity> laws;
    std::string provenance;
    if (q.has_laws()) {
        laws = q.laws();
    } else {
        ExtractBounds b;
        laws = extract_quasi_identities(q.generators(), q.sig(), b);
        provenance = "laws extracted from generators up to " + std::to_string(b.max_vars) +
                     " vars, depth " + std::to_string(b.term_depth) + ", " +
                     std::to_string(b.max_premises) + " premise(s)";
    }
    Congruence theta = Congruence::discrete(m.size());
    while (true) {
        QuotientResult qr = quotient_algebra(m, theta);
        std::vector<int> block_rep;
        for (int i = 0; i < m.size(); ++i)
            if (theta.rep(i) == i)
                block_rep.push_back(i);
        bool merged = false;
        for (const auto& law : laws) {
            const int nv = law.var_count();
            std::vector<int> env(static_cast<std::size_t>(nv), 0);
            while (true) {
                bool premises_hold = true;
                for (const auto& [l, r] : law.premises) {
                    if (eval_term(qr.algebra, l, env) != eval_term(qr.algebra, r, env)) {
                        premises_hold = false;
                        break;
                    }
                }
                if (premises_hold) {
                    int u = eval_term(qr.algebra, law.conclusion.first, env);
                    int v = eval_term(qr.algebra, law.conclusion.second, env);
                    if (u != v) {
                        auto pairs = theta.pairs();
                        pairs.emplace_back(block_rep[static_cast<std::size_t>(u)],
                                           block_rep[static_cast<std::size_t>(v)]);
                        theta = congruence_generated(m, pairs);
                        merged = true;
                        break;
                    }
                }
                int j = nv - 1;
                for (; j >= 0; --j) {
                    if (++env[static_cast<std::size_t>(j)] < qr.algebra.size())
                        break;
                    env[static_cast<std::size_t>(j)] = 0;
                }
                if (j < 0)
                    break;
            }
            if (merged)
                break;
        }
        if (!merged)
            return {std::move(qr.algebra), std::move(qr.projection), std::move(theta),
                    std::move(provenance)};
    }
}

struct FreeAlgebraResult {
    FiniteAlgebra algebra;
    std::vector<int> generators; // indices of the free generators
};

// Free algebra on n generators over the quasivariety's Generators
// presentation: the subalgebra of the product over all (generator algebra,
// valuation) coordinates generated by the n projection tuples.
inline FreeAlgebraResult free_algebra(const QuasivarietySpec& q, int n, std::size_t size_cap) {
    if (!q.has_generators())
        throw Error("free_algebra: " + q.name() + " has no Generators presentation");
    if (n < 0)
        throw Error("free_algebra: negative generator count");
    bool has_constants = false;
    if (auto it = q.sig().conns().find(0); it != q.sig().conns().end())
        has_constants = !it->second.empty();
    if (n == 0 && !has_constants)
        throw Error("free_algebra: no generators and no constants, the free algebra is empty");

    // coordinates: (generator algebra, valuation v : n -> carrier), valuations
    // in lexicographic order with v(0) most significant
    struct Coord {
        const FiniteAlgebra* alg;
        std::vector<int> val;
    };
    std::vector<Coord> coords;
    for (const auto& g : q.generators()) {
        std::vector<int> val(static_cast<std::size_t>(n), 0);
        while (true) {
            coords.push_back({&g, val});
            int j = n - 1;
            for (; j >= 0; --j) {
                if (++val[static_cast<std::size_t>(j)] < g.size())
                    break;
                val[static_cast<std::size_t>(j)] = 0;
            }
            if (j < 0)
                break;
        }
    }
    const std::size_t w = coords.size();

    std::vector<std::vector<int>> elems;
    std::map<std::vector<int>, int> index_of;
    auto intern = [&](std::vector<int> v) {
        auto [it, fresh] = index_of.emplace(std::move(v), static_cast<int>(elems.size()));
        if (fresh) {
            elems.push_back(it->first);
            if (elems.size() > size_cap)
                throw Error("free_algebra: size cap " + std::to_string(size_cap) +
                            " exceeded (set LWB_SIZE_CAP to raise)");
        }
        return it->second;
    };

    std::vector<int> gen_ids;
    for (int i = 0; i < n; ++i) {
        std::vector<int> tup(w);
        for (std::size_t c = 0; c < w; ++c)
            tup[c] = coords[c].val[static_cast<std::size_t>(i)];
        gen_ids.push_back(intern(std::move(tup)));
    }

    // close under the operations; iterate in signature order, argument
    // tuples by element index, until stable
    bool grew = true;
    while (grew) {
        grew = false;
        const int cur = static_cast<int>(elems.size());
        for (const auto& [arity, names] : q.sig().conns()) {
            if (arity > 0 && cur == 0)
                continue; // no argument tuples yet; constants will seed first
            for (const auto& c : names) {
                std::vector<int> t(static_cast<std::size_t>(arity), 0);
                while (true) {
                    std::vector<int> res(w);
                    for (std::size_t cd = 0; cd < w; ++cd) {
                        std::vector<int> args(static_cast<std::size_t>(arity));
                        for (int j = 0; j < arity; ++j)
                            args[static_cast<std::size_t>(j)] =
                                elems[static_cast<std::size_t>(t[static_cast<std::size_t>(j)])][cd];
                        res[cd] = coords[cd].alg->apply(c, args);
                    }
                    int before = static_cast<int>(elems.size());
                    intern(std::move(res));
                    if (static_cast<int>(elems.size()) > before)
                        grew = true;
                    int j = arity - 1;
                    for (; j >= 0; --j) {
                        if (++t[static_cast<std::size_t>(j)] < cur)
                            break;
                        t[static_cast<std::size_t>(j)] = 0;
                    }
                    if (j < 0)
                        break;
                }
            }
        }
    }

    const int k = static_cast<int>(elems.size());
    std::map<std::string, std::vector<int>> tables;
    for (const auto& [arity, names] : q.sig().conns()) {
        for (const auto& c : names) {
            std::size_t rows = 1;
            for (int i = 0; i < arity; ++i)
                rows *= static_cast<std::size_t>(k);
            std::vector<int> tbl(rows);
            std::vector<int> t(static_cast<std::size_t>(arity), 0);
            std::size_t idx = 0;
            while (idx < rows) {
                std::vector<int> res(w);
                for (std::size_t cd = 0; cd < w; ++cd) {
                    std::vector<int> args(static_cast<std::size_t>(arity));
                    for (int j = 0; j < arity; ++j)
                        args[static_cast<std::size_t>(j)] =
                            elems[static_cast<std::size_t>(t[static_cast<std::size_t>(j)])][cd];
                    res[cd] = coords[cd].alg->apply(c, args);
                }
                auto it = index_of.find(res);
                if (it == index_of.end())
                    throw Error("free_algebra: closure incomplete"); // unreachable
                tbl[idx] = it->second;
                ++idx;
                int j = arity - 1;
                for (; j >= 0; --j) {
                    if (++t[static_cast<std::size_t>(j)] < k)
                        break;
                    t[static_cast<std::size_t>(j)] = 0;
                }
                if (j < 0)
                    break;
            }
            tables.emplace(c, std::move(tbl));
        }
    }
    FiniteAlgebra fa(q.sig(), k, std::move(tables), "free(" + q.name() + "," + std::to_string(n) + ")");
    return {std::move(fa), std::move(gen_ids)};
}

} // namespace lwb
