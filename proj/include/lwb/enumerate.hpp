#pragma once

#include <cstddef>
#include <vector>

#include "lwb/formula.hpp"
#include "lwb/signature.hpp"

namespace lwb {

// Deterministic formula enumeration over x0..x{nvars-1}.  The order is part
// of the contract:
//   depth 0:  variables in index order, then 0-ary connectives in signature
//             order;
//   depth k:  connectives in signature order (arity ascending, declaration
//             order within an arity); per connective, argument tuples in
//             lexicographic order of their indices into the flattened
//             depth <= k-1 prefix, keeping exactly the tuples whose deepest
//             argument has depth k-1.
// Every formula of depth <= max_depth appears exactly once.
struct FormulaLevels {
    std::vector<std::vector<Formula>> by_depth;

    std::vector<Formula> flat() const {
        std::vector<Formula> out;
        for (const auto& lv : by_depth)
            out.insert(out.end(), lv.begin(), lv.end());
        return out;
    }

    std::size_t total() const {
        std::size_t n = 0;
        for (const auto& lv : by_depth)
            n += lv.size();
        return n;
    }
};

inline FormulaLevels enumerate_levels(const Signature& sig, int nvars, int max_depth,
                                      std::size_t cap = 2000000) {
    if (nvars < 0 || max_depth < 0)
        throw Error("enumerate_formulas: negative bound");
    FormulaLevels lv;
    lv.by_depth.emplace_back();
    for (int i = 0; i < nvars; ++i)
        lv.by_depth[0].push_back(Formula::var(i));
    if (auto it = sig.conns().find(0); it != sig.conns().end())
        for (const auto& c : it->second)
            lv.by_depth[0].push_back(Formula::app(c, {}));

    std::vector<Formula> prefix = lv.by_depth[0];
    std::vector<int> prefix_depth(prefix.size(), 0);
    std::size_t count = prefix.size();
    if (count > cap)
        throw Error("enumerate_formulas: cap exceeded");

    for (int k = 1; k <= max_depth; ++k) {
        lv.by_depth.emplace_back();
        auto& level = lv.by_depth.back();
        const std::size_t p = prefix.size();
        if (p == 0)
            break;
        for (const auto& [arity, names] : sig.conns()) {
            if (arity == 0)
                continue;
            for (const auto& c : names) {
                std::vector<std::size_t> idx(arity, 0);
                while (true) {
                    int dmax = 0;
                    for (int j = 0; j < arity; ++j)
                        dmax = std::max(dmax, prefix_depth[idx[j]]);
                    if (dmax == k - 1) {
                        std::vector<Formula> args;
                        args.reserve(arity);
                        for (int j = 0; j < arity; ++j)
                            args.push_back(prefix[idx[j]]);
                        level.push_back(Formula::app(c, std::move(args)));
                        if (++count > cap)
                            throw Error("enumerate_formulas: cap exceeded");
                    }
                    int j = arity - 1;
                    for (; j >= 0; --j) {
                        if (++idx[j] < p)
                            break;
                        idx[j] = 0;
                    }
                    if (j < 0)
                        break;
                }
            }
        }
        for (const auto& f : level) {
            prefix.push_back(f);
            prefix_depth.push_back(k);
        }
    }
    return lv;
}

inline std::vector<Formula> enumerate_formulas(const Signature& sig, int nvars, int max_depth,
                                               std::size_t cap = 2000000) {
    return enumerate_levels(sig, nvars, max_depth, cap).flat();
}

} // namespace lwb
