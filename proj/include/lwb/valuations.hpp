#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "lwb/formula.hpp"
#include "lwb/matrix.hpp"
#include "lwb/morphism.hpp"

namespace lwb {

// bitmask over valuation coordinates
using Mask = std::vector<std::uint64_t>;

inline Mask make_mask(std::size_t width) { return Mask((width + 63) / 64, 0); }

inline void mask_set(Mask& m, std::size_t bit) { m[bit / 64] |= std::uint64_t{1} << (bit % 64); }

inline bool mask_test(const Mask& m, std::size_t bit) {
    return (m[bit / 64] >> (bit % 64)) & 1;
}

inline Mask mask_ones(std::size_t width) {
    Mask m((width + 63) / 64, ~std::uint64_t{0});
    if (width % 64)
        m.back() = (std::uint64_t{1} << (width % 64)) - 1;
    return m;
}

inline bool mask_subset(const Mask& a, const Mask& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i])
            return false;
    return true;
}

inline void mask_and_inplace(Mask& a, const Mask& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] &= b[i];
}

// Value vectors of formulas over every valuation of x0..x{n-1} into every
// matrix of a family.  Coordinates run matrix-major, valuations in
// lexicographic order with x0 most significant.
class FamilyEval {
public:
    FamilyEval(const std::vector<LogicalMatrix>& family, int nvars)
        : family_(&family), nvars_(nvars) {
        for (std::size_t mi = 0; mi < family.size(); ++mi) {
            const LogicalMatrix& m = family[mi];
            std::size_t block = 1;
            for (int i = 0; i < nvars; ++i)
                block *= static_cast<std::size_t>(m.size());
            for (std::size_t c = 0; c < block; ++c)
                coord_matrix_.push_back(mi);
            // valuation values per coordinate
            std::vector<int> val(static_cast<std::size_t>(nvars), 0);
            for (std::size_t c = 0; c < block; ++c) {
                coord_val_.push_back(val);
                for (int j = nvars - 1; j >= 0; --j) {
                    if (++val[static_cast<std::size_t>(j)] < m.size())
                        break;
                    val[static_cast<std::size_t>(j)] = 0;
                }
            }
        }
        width_ = coord_matrix_.size();
        var_vecs_.resize(static_cast<std::size_t>(nvars));
        for (int i = 0; i < nvars; ++i) {
            var_vecs_[static_cast<std::size_t>(i)].resize(width_);
            for (std::size_t c = 0; c < width_; ++c)
                var_vecs_[static_cast<std::size_t>(i)][c] = coord_val_[c][static_cast<std::size_t>(i)];
        }
    }

    std::size_t width() const { return width_; }
    int nvars() const { return nvars_; }
    const std::vector<LogicalMatrix>& family() const { return *family_; }

    const std::vector<int>& var_vec(int i) const {
        if (i < 0 || i >= nvars_)
            throw Error("variable x" + std::to_string(i) + " outside the declared bound of " +
                        std::to_string(nvars_) + " variables");
        return var_vecs_[static_cast<std::size_t>(i)];
    }

    std::vector<int> apply(const std::string& conn,
                           const std::vector<const std::vector<int>*>& args) const {
        std::vector<int> out(width_);
        std::vector<int> a(args.size());
        for (std::size_t c = 0; c < width_; ++c) {
            for (std::size_t j = 0; j < args.size(); ++j)
                a[j] = (*args[j])[c];
            out[c] = (*family_)[coord_matrix_[c]].algebra().apply(conn, a);
        }
        return out;
    }

    const std::vector<int>& eval(const Formula& f) {
        auto it = memo_.find(f);
        if (it != memo_.end())
            return it->second;
        std::vector<int> v;
        if (f.is_var()) {
            v = var_vec(f.var_index());
        } else {
            std::vector<const std::vector<int>*> child;
            child.reserve(f.args().size());
            for (const Formula& a : f.args())
                child.push_back(&eval(a));
            v = apply(f.conn(), child);
        }
        return memo_.emplace(f, std::move(v)).first->second;
    }

    // evaluate a schema whose variables are bound to precomputed vectors
    std::vector<int> eval_env(const Formula& schema,
                              const std::vector<const std::vector<int>*>& env) const {
        if (schema.is_var()) {
            int i = schema.var_index();
            if (i < 0 || static_cast<std::size_t>(i) >= env.size())
                throw Error("schema variable x" + std::to_string(i) + " unbound");
            return *env[static_cast<std::size_t>(i)];
        }
        std::vector<std::vector<int>> child;
        child.reserve(schema.args().size());
        for (const Formula& a : schema.args())
            child.push_back(eval_env(a, env));
        std::vector<const std::vector<int>*> ptrs;
        ptrs.reserve(child.size());
        for (const auto& c : child)
            ptrs.push_back(&c);
        return apply(schema.conn(), ptrs);
    }

    Mask des_mask(const std::vector<int>& values) const {
        Mask m = make_mask(width_);
        for (std::size_t c = 0; c < width_; ++c)
            if ((*family_)[coord_matrix_[c]].is_designated(values[c]))
                mask_set(m, c);
        return m;
    }

    // equality-of-values mask, used for equational consequence
    Mask eq_mask(const std::vector<int>& lhs, const std::vector<int>& rhs) const {
        Mask m = make_mask(width_);
        for (std::size_t c = 0; c < width_; ++c)
            if (lhs[c] == rhs[c])
                mask_set(m, c);
        return m;
    }

private:
    const std::vector<LogicalMatrix>* family_;
    int nvars_;
    std::size_t width_ = 0;
    std::vector<std::size_t> coord_matrix_;
    std::vector<std::vector<int>> coord_val_;
    std::vector<std::vector<int>> var_vecs_;
    std::unordered_map<Formula, std::vector<int>, FormulaHash> memo_;
};

// Value vectors of the translation of a formula under a morphism, over the
// target family, computed compositionally without materializing the
// translated formula.
class PullbackEval {
public:
    PullbackEval(const FlexMorphism& t, const std::vector<LogicalMatrix>& target_family,
                 int nvars)
        : t_(&t), target_(target_family, nvars) {}

    std::size_t width() const { return target_.width(); }
    FamilyEval& target() { return target_; }

    const std::vector<int>& eval(const Formula& f) {
        auto it = memo_.find(f);
        if (it != memo_.end())
            return it->second;
        std::vector<int> v;
        if (f.is_var()) {
            v = target_.var_vec(f.var_index());
        } else {
            std::vector<const std::vector<int>*> child;
            child.reserve(f.args().size());
            for (const Formula& a : f.args())
                child.push_back(&eval(a));
            v = target_.eval_env(t_->schema(f.conn()), child);
        }
        return memo_.emplace(f, std::move(v)).first->second;
    }

    Mask des_mask(const std::vector<int>& values) const { return target_.des_mask(values); }

private:
    const FlexMorphism* t_;
    FamilyEval target_;
    std::unordered_map<Formula, std::vector<int>, FormulaHash> memo_;
};

} // namespace lwb
