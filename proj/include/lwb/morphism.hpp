#pragma once

#include <map>
#include <string>
#include <vector>

#include "lwb/formula.hpp"
#include "lwb/parse.hpp"
#include "lwb/signature.hpp"

namespace lwb {

// A signature morphism sending every n-ary source connective to a formula
// over the target signature in variables x0..x{n-1}.  Strict morphisms
// (connective-to-connective renamings) are stored in the same shape with a
// flag; their schemas are c'(x0,..,x{n-1}).
class FlexMorphism {
public:
    FlexMorphism() = default;

    static FlexMorphism flexible(Signature source, Signature target,
                                 std::map<std::string, Formula> schemas,
                                 std::string name = "") {
        return FlexMorphism(std::move(source), std::move(target), std::move(schemas), false,
                            std::move(name));
    }

    static FlexMorphism strict(Signature source, Signature target,
                               const std::map<std::string, std::string>& conn_map,
                               std::string name = "") {
        std::map<std::string, Formula> schemas;
        for (const auto& [arity, names] : source.conns()) {
            for (const auto& c : names) {
                auto it = conn_map.find(c);
                if (it == conn_map.end())
                    throw Error("strict morphism " + name + ": no image for '" + c + "'");
                if (target.arity_of(it->second) != arity)
                    throw Error("strict morphism " + name + ": '" + c + "' -> '" + it->second +
                                "' does not preserve arity");
                std::vector<Formula> xs;
                for (int i = 0; i < arity; ++i)
                    xs.push_back(Formula::var(i));
                schemas.emplace(c, Formula::app(it->second, std::move(xs)));
            }
        }
        return FlexMorphism(std::move(source), std::move(target), std::move(schemas), true,
                            std::move(name));
    }

    static FlexMorphism identity(const Signature& sig) {
        std::map<std::string, std::string> m;
        for (const auto& c : sig.all_conns())
            m.emplace(c, c);
        return strict(sig, sig, m, "id");
    }

    const Signature& source() const { return source_; }
    const Signature& target() const { return target_; }
    const std::string& name() const { return name_; }
    bool is_strict() const { return strict_; }

    const Formula& schema(const std::string& conn) const {
        auto it = schemas_.find(conn);
        if (it == schemas_.end())
            throw Error("morphism " + name_ + ": unknown source connective '" + conn + "'");
        return it->second;
    }

    const std::map<std::string, Formula>& schemas() const { return schemas_; }

    // homomorphic extension to formulas: variables are fixed, each
    // application c(a0,..) becomes schema(c) with xj := lift(aj)
    Formula lift(const Formula& phi) const {
        if (phi.is_var())
            return phi;
        std::map<int, Formula> env;
        const auto& as = phi.args();
        for (std::size_t j = 0; j < as.size(); ++j)
            env.emplace(static_cast<int>(j), lift(as[j]));
        return substitute(schema(phi.conn()), env);
    }

    std::vector<Formula> lift_all(const std::vector<Formula>& phis) const {
        std::vector<Formula> out;
        out.reserve(phis.size());
        for (const auto& p : phis)
            out.push_back(lift(p));
        return out;
    }

private:
    FlexMorphism(Signature source, Signature target, std::map<std::string, Formula> schemas,
                 bool strict, std::string name)
        : source_(std::move(source)), target_(std::move(target)), schemas_(std::move(schemas)),
          strict_(strict), name_(std::move(name)) {
        for (const auto& [arity, names] : source_.conns()) {
            for (const auto& c : names) {
                auto it = schemas_.find(c);
                if (it == schemas_.end())
                    throw Error("morphism " + name_ + ": missing schema for '" + c + "'");
                check_over(it->second, target_);
                if (it->second.var_span() > arity)
                    throw Error("morphism " + name_ + ": schema for '" + c + "' uses x" +
                                std::to_string(it->second.var_span() - 1) +
                                " beyond arity " + std::to_string(arity));
            }
        }
        if (schemas_.size() != source_.conn_count())
            throw Error("morphism " + name_ + ": schema map does not match source signature");
    }

    Signature source_, target_;
    std::map<std::string, Formula> schemas_;
    bool strict_ = true;
    std::string name_;
};

// (g . f): first f, then g; schemas are g-lifts of f's schemas
inline FlexMorphism compose(const FlexMorphism& g, const FlexMorphism& f,
                            std::string name = "") {
    if (!(f.target() == g.source()))
        throw Error("compose: target of " + f.name() + " differs from source of " + g.name());
    if (name.empty())
        name = g.name() + "." + f.name();
    if (f.is_strict() && g.is_strict()) {
        std::map<std::string, std::string> m;
        for (const auto& [c, sch] : f.schemas())
            m.emplace(c, g.lift(sch).conn());
        return FlexMorphism::strict(f.source(), g.target(), m, name);
    }
    std::map<std::string, Formula> schemas;
    for (const auto& [c, sch] : f.schemas())
        schemas.emplace(c, g.lift(sch));
    return FlexMorphism::flexible(f.source(), g.target(), std::move(schemas), name);
}

// every arity-preserving connective renaming source -> target, in a
// deterministic order
inline std::vector<FlexMorphism> enumerate_strict_morphisms(const Signature& source,
                                                            const Signature& target) {
    std::vector<std::vector<std::pair<std::string, std::string>>> choices;
    for (const auto& [arity, names] : source.conns()) {
        auto t_it = target.conns().find(arity);
        if (t_it == target.conns().end() || t_it->second.empty())
            return {};
        for (const auto& c : names) {
            choices.emplace_back();
            for (const auto& d : t_it->second)
                choices.back().emplace_back(c, d);
        }
    }
    std::vector<FlexMorphism> out;
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
        std::map<std::string, std::string> m;
        for (std::size_t i = 0; i < choices.size(); ++i)
            m.insert(choices[i][pick[i]]);
        std::string nm = source.name() + "->" + target.name();
        for (std::size_t i = 0; i < choices.size(); ++i)
            nm += "." + choices[i][pick[i]].second;
        out.push_back(FlexMorphism::strict(source, target, m, nm));
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < choices[i].size())
                break;
            pick[i] = 0;
        }
        if (i == pick.size())
            break;
    }
    return out;
}

} // namespace lwb
