#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lwb/formula.hpp"
#include "lwb/signature.hpp"

namespace lwb {

// A total finite algebra over a signature.  Carrier is 0..size-1; each
// connective has a row-major table (first argument most significant).
class FiniteAlgebra {
public:
    FiniteAlgebra() = default;

    FiniteAlgebra(Signature sig, int size, std::map<std::string, std::vector<int>> tables,
                  std::string name = "")
        : sig_(std::move(sig)), size_(size), tables_(std::move(tables)), name_(std::move(name)) {
        if (size_ < 1)
            throw Error("algebra " + name_ + ": carrier must be nonempty");
        for (const auto& [arity, names] : sig_.conns()) {
            for (const auto& c : names) {
                auto it = tables_.find(c);
                if (it == tables_.end())
                    throw Error("algebra " + name_ + ": missing table for '" + c + "'");
                std::size_t want = 1;
                for (int i = 0; i < arity; ++i)
                    want *= static_cast<std::size_t>(size_);
                if (it->second.size() != want)
                    throw Error("algebra " + name_ + ": table for '" + c + "' has " +
                                std::to_string(it->second.size()) + " entries, expected " +
                                std::to_string(want));
                for (int v : it->second)
                    if (v < 0 || v >= size_)
                        throw Error("algebra " + name_ + ": table entry for '" + c +
                                    "' out of carrier");
            }
        }
        if (tables_.size() != sig_.conn_count())
            throw Error("algebra " + name_ + ": table map does not match signature");
    }

    const Signature& sig() const { return sig_; }
    int size() const { return size_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    const std::vector<int>& table(const std::string& conn) const {
        auto it = tables_.find(conn);
        if (it == tables_.end())
            throw Error("algebra " + name_ + ": no table for '" + conn + "'");
        return it->second;
    }

    const std::map<std::string, std::vector<int>>& tables() const { return tables_; }

    int apply(const std::string& conn, std::span<const int> args) const {
        const auto& t = table(conn);
        std::size_t idx = 0;
        for (int a : args)
            idx = idx * static_cast<std::size_t>(size_) + static_cast<std::size_t>(a);
        return t[idx];
    }

    // same carrier size and identical tables (signature must agree)
    bool same_tables(const FiniteAlgebra& o) const {
        return size_ == o.size_ && sig_ == o.sig_ && tables_ == o.tables_;
    }

private:
    Signature sig_;
    int size_ = 1;
    std::map<std::string, std::vector<int>> tables_;
    std::string name_;
};

inline int eval_term(const FiniteAlgebra& a, const Formula& t, std::span<const int> env) {
    if (t.is_var()) {
        if (t.var_index() >= static_cast<int>(env.size()))
            throw Error("eval_term: unbound variable x" + std::to_string(t.var_index()));
        return env[static_cast<std::size_t>(t.var_index())];
    }
    std::vector<int> args;
    args.reserve(t.args().size());
    for (const auto& s : t.args())
        args.push_back(eval_term(a, s, env));
    return a.apply(t.conn(), args);
}

inline bool is_hom(const FiniteAlgebra& a, const FiniteAlgebra& b, std::span<const int> f) {
    if (static_cast<int>(f.size()) != a.size())
        return false;
    for (const auto& [arity, names] : a.sig().conns()) {
        for (const auto& c : names) {
            std::vector<int> t(arity, 0);
            while (true) {
                std::vector<int> ft(arity);
                for (int j = 0; j < arity; ++j)
                    ft[j] = f[t[j]];
                if (f[a.apply(c, t)] != b.apply(c, ft))
                    return false;
                int j = arity - 1;
                for (; j >= 0; --j) {
                    if (++t[j] < a.size())
                        break;
                    t[j] = 0;
                }
                if (j < 0)
                    break;
            }
        }
    }
    return true;
}

namespace detail {

// Propagates op-closure constraints of a partial map a -> b.  Returns false
// on contradiction.  Elements with value -1 are unassigned.
inline bool hom_propagate(const FiniteAlgebra& a, const FiniteAlgebra& b, std::vector<int>& f) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [arity, names] : a.sig().conns()) {
            for (const auto& c : names) {
                std::vector<int> t(arity, 0);
                while (true) {
                    bool all = true;
                    for (int j = 0; j < arity && all; ++j)
                        all = f[t[j]] >= 0;
                    if (all) {
                        std::vector<int> ft(arity);
                        for (int j = 0; j < arity; ++j)
                            ft[j] = f[t[j]];
                        int src = a.apply(c, t);
                        int img = b.apply(c, ft);
                        if (f[src] < 0) {
                            f[src] = img;
                            changed = true;
                        } else if (f[src] != img) {
                            return false;
                        }
                    }
                    int j = arity - 1;
                    for (; j >= 0; --j) {
                        if (++t[j] < a.size())
                            break;
                        t[j] = 0;
                    }
                    if (j < 0)
                        break;
                }
            }
        }
    }
    return true;
}

inline void hom_search(const FiniteAlgebra& a, const FiniteAlgebra& b, std::vector<int> f,
                       std::vector<std::vector<int>>& out) {
    if (!hom_propagate(a, b, f))
        return;
    int next = -1;
    for (int i = 0; i < a.size(); ++i) {
        if (f[i] < 0) {
            next = i;
            break;
        }
    }
    if (next < 0) {
        out.push_back(std::move(f));
        return;
    }
    for (int v = 0; v < b.size(); ++v) {
        std::vector<int> g = f;
        g[next] = v;
        hom_search(a, b, std::move(g), out);
    }
}

} // namespace detail

// All homomorphisms a -> b, sorted lexicographically as value vectors.
inline std::vector<std::vector<int>> enumerate_homs(const FiniteAlgebra& a,
                                                    const FiniteAlgebra& b) {
    if (!(a.sig() == b.sig()))
        throw Error("enumerate_homs: signature mismatch");
    std::vector<std::vector<int>> out;
    detail::hom_search(a, b, std::vector<int>(a.size(), -1), out);
    std::sort(out.begin(), out.end());
    return out;
}

// homomorphisms a -> b extending a partial assignment (-1 = unassigned)
inline std::vector<std::vector<int>> find_homs_extending(const FiniteAlgebra& a,
                                                         const FiniteAlgebra& b,
                                                         const std::vector<int>& partial) {
    if (!(a.sig() == b.sig()))
        throw Error("find_homs_extending: signature mismatch");
    if (static_cast<int>(partial.size()) != a.size())
        throw Error("find_homs_extending: partial map has wrong length");
    std::vector<std::vector<int>> out;
    detail::hom_search(a, b, partial, out);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::optional<std::vector<int>> find_isomorphism(const FiniteAlgebra& a,
                                                        const FiniteAlgebra& b) {
    if (!(a.sig() == b.sig()) || a.size() != b.size())
        return std::nullopt;
    for (const auto& f : enumerate_homs(a, b)) {
        std::vector<char> hit(static_cast<std::size_t>(b.size()), 0);
        bool bij = true;
        for (int v : f) {
            if (hit[static_cast<std::size_t>(v)]) {
                bij = false;
                break;
            }
            hit[static_cast<std::size_t>(v)] = 1;
        }
        if (bij)
            return f;
    }
    return std::nullopt;
}

// A partition of 0..n-1 in canonical form: rep[i] is the least element of
// the block containing i.
class Congruence {
public:
    Congruence() = default;

    static Congruence discrete(int n) {
        std::vector<int> r(static_cast<std::size_t>(n));
        std::iota(r.begin(), r.end(), 0);
        return Congruence(std::move(r));
    }

    static Congruence total(int n) { return Congruence(std::vector<int>(static_cast<std::size_t>(n), 0)); }

    static Congruence from_reps(std::vector<int> rep) {
        // canonicalize: path-compress to least representative; entries must
        // point downward or the vector is rejected
        const int n = static_cast<int>(rep.size());
        for (int i = 0; i < n; ++i) {
            int r = rep[static_cast<std::size_t>(i)];
            if (r < 0 || r >= n || r > i)
                throw Error("congruence: rep vector not canonical");
            while (rep[static_cast<std::size_t>(r)] != r) {
                int next = rep[static_cast<std::size_t>(r)];
                if (next > r)
                    throw Error("congruence: rep vector not canonical");
                r = next;
            }
            rep[static_cast<std::size_t>(i)] = r;
        }
        return Congruence(std::move(rep));
    }

    int size() const { return static_cast<int>(rep_.size()); }
    int rep(int i) const { return rep_[static_cast<std::size_t>(i)]; }
    bool same(int i, int j) const { return rep(i) == rep(j); }
    const std::vector<int>& reps() const { return rep_; }

    int block_count() const {
        int n = 0;
        for (int i = 0; i < size(); ++i)
            if (rep_[static_cast<std::size_t>(i)] == i)
                ++n;
        return n;
    }

    // blocks ordered by least element; members ascending
    std::vector<std::vector<int>> blocks() const {
        std::map<int, std::vector<int>> by_rep;
        for (int i = 0; i < size(); ++i)
            by_rep[rep(i)].push_back(i);
        std::vector<std::vector<int>> out;
        for (auto& [r, blk] : by_rep)
            out.push_back(std::move(blk));
        return out;
    }

    // every block of this is contained in a block of coarser
    bool refines(const Congruence& coarser) const {
        if (coarser.size() != size())
            return false;
        for (int i = 0; i < size(); ++i)
            if (!coarser.same(i, rep(i)))
                return false;
        return true;
    }

    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < size(); ++i)
            if (rep(i) != i)
                out.emplace_back(rep(i), i);
        return out;
    }

    friend bool operator==(const Congruence& a, const Congruence& b) { return a.rep_ == b.rep_; }
    friend bool operator!=(const Congruence& a, const Congruence& b) { return !(a == b); }
    friend bool operator<(const Congruence& a, const Congruence& b) { return a.rep_ < b.rep_; }

private:
    explicit Congruence(std::vector<int> rep) : rep_(std::move(rep)) {}
    std::vector<int> rep_;
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    // keep the smaller root as representative
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (a > b)
            std::swap(a, b);
        parent[static_cast<std::size_t>(b)] = a;
        return true;
    }
    Congruence to_congruence() {
        std::vector<int> rep(parent.size());
        for (int i = 0; i < static_cast<int>(parent.size()); ++i)
            rep[static_cast<std::size_t>(i)] = find(i);
        return Congruence::from_reps(std::move(rep));
    }
};

} // namespace detail

// Least congruence of a containing the given pairs: equivalence closure
// interleaved with operation compatibility until a fixpoint.
inline Congruence congruence_generated(const FiniteAlgebra& a,
                                       const std::vector<std::pair<int, int>>& pairs) {
    detail::UnionFind uf(a.size());
    for (const auto& [x, y] : pairs) {
        if (x < 0 || x >= a.size() || y < 0 || y >= a.size())
            throw Error("congruence_generated: element out of carrier");
        uf.unite(x, y);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [arity, names] : a.sig().conns()) {
            if (arity == 0)
                continue;
            for (const auto& c : names) {
                std::vector<int> t(arity, 0);
                while (true) {
                    // replace one argument by an equivalent element
                    for (int j = 0; j < arity; ++j) {
                        for (int v = 0; v < a.size(); ++v) {
                            if (v == t[j] || uf.find(v) != uf.find(t[j]))
                                continue;
                            std::vector<int> s(t.begin(), t.end());
                            s[static_cast<std::size_t>(j)] = v;
                            if (uf.unite(a.apply(c, t), a.apply(c, s)))
                                changed = true;
                        }
                    }
                    int j = arity - 1;
                    for (; j >= 0; --j) {
                        if (++t[j] < a.size())
                            break;
                        t[j] = 0;
                    }
                    if (j < 0)
                        break;
                }
            }
        }
    }
    return uf.to_congruence();
}

inline bool is_congruence(const FiniteAlgebra& a, const Congruence& th) {
    if (th.size() != a.size())
        return false;
    for (const auto& [arity, names] : a.sig().conns()) {
        if (arity == 0)
            continue;
        for (const auto& c : names) {
            std::vector<int> t(arity, 0);
            while (true) {
                for (int j = 0; j < arity; ++j) {
                    for (int v = 0; v < a.size(); ++v) {
                        if (!th.same(v, t[j]))
                            continue;
                        std::vector<int> s(t.begin(), t.end());
                        s[static_cast<std::size_t>(j)] = v;
                        if (!th.same(a.apply(c, t), a.apply(c, s)))
                            return false;
                    }
                }
                int j = arity - 1;
                for (; j >= 0; --j) {
                    if (++t[j] < a.size())
                        break;
                    t[j] = 0;
                }
                if (j < 0)
                    break;
            }
        }
    }
    return true;
}

struct QuotientResult {
    FiniteAlgebra algebra;
    std::vector<int> projection; // element -> block index
};

// Quotient by a congruence; blocks are numbered by ascending least
// representative, which makes the projection deterministic.
inline QuotientResult quotient_algebra(const FiniteAlgebra& a, const Congruence& th) {
    if (th.size() != a.size())
        throw Error("quotient_algebra: congruence size mismatch");
    if (!is_congruence(a, th))
        throw Error("quotient_algebra: partition is not compatible with the operations");
    std::vector<int> block_of(static_cast<std::size_t>(a.size()), -1);
    std::vector<int> block_rep;
    for (int i = 0; i < a.size(); ++i) {
        if (th.rep(i) == i) {
            block_of[static_cast<std::size_t>(i)] = static_cast<int>(block_rep.size());
            block_rep.push_back(i);
        }
    }
    for (int i = 0; i < a.size(); ++i)
        block_of[static_cast<std::size_t>(i)] = block_of[static_cast<std::size_t>(th.rep(i))];
    const int q = static_cast<int>(block_rep.size());
    std::map<std::string, std::vector<int>> tables;
    for (const auto& [arity, names] : a.sig().conns()) {
        for (const auto& c : names) {
            std::size_t rows = 1;
            for (int i = 0; i < arity; ++i)
                rows *= static_cast<std::size_t>(q);
            std::vector<int> tbl(rows);
            std::vector<int> t(arity, 0);
            std::size_t idx = 0;
            while (idx < rows) {
                std::vector<int> lifted(arity);
                for (int j = 0; j < arity; ++j)
                    lifted[j] = block_rep[static_cast<std::size_t>(t[j])];
                tbl[idx] = block_of[static_cast<std::size_t>(a.apply(c, lifted))];
                ++idx;
                int j = arity - 1;
                for (; j >= 0; --j) {
                    if (++t[j] < q)
                        break;
                    t[j] = 0;
                }
                if (j < 0)
                    break;
            }
            tables.emplace(c, std::move(tbl));
        }
    }
    FiniteAlgebra qa(a.sig(), q, std::move(tables),
                     a.name().empty() ? "quotient" : a.name() + "/theta");
    return {std::move(qa), std::move(block_of)};
}

// All congruences of a, by exhaustive partition search (desk scale: carriers
// up to ~8).  Ordered lexicographically by canonical rep vector.
inline std::vector<Congruence> all_congruences(const FiniteAlgebra& a) {
    std::vector<Congruence> out;
    std::vector<int> rg(static_cast<std::size_t>(a.size()), 0);
    // restricted growth strings enumerate set partitions
    auto emit = [&]() {
        std::vector<int> first(static_cast<std::size_t>(a.size()), -1);
        std::vector<int> rep(static_cast<std::size_t>(a.size()));
        for (int i = 0; i < a.size(); ++i) {
            int blk = rg[static_cast<std::size_t>(i)];
            if (first[static_cast<std::size_t>(blk)] < 0)
                first[static_cast<std::size_t>(blk)] = i;
            rep[static_cast<std::size_t>(i)] = first[static_cast<std::size_t>(blk)];
        }
        Congruence th = Congruence::from_reps(std::move(rep));
        if (is_congruence(a, th))
            out.push_back(std::move(th));
    };
    auto rec = [&](auto&& self, int i, int maxblk) -> void {
        if (i == a.size()) {
            emit();
            return;
        }
        for (int b = 0; b <= maxblk + 1 && b < a.size(); ++b) {
            rg[static_cast<std::size_t>(i)] = b;
            self(self, i + 1, std::max(maxblk, b));
        }
    };
    rec(rec, 0, -1);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace lwb
