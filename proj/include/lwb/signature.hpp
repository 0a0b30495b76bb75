#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "lwb/error.hpp"

namespace lwb {

// A propositional signature: finitely many connective names, each with a
// fixed arity.  Names must be pairwise distinct across all arities.  The
// declaration order within an arity is kept; it drives formula enumeration
// and every deterministic report ordering downstream.
class Signature {
public:
    Signature() = default;

    Signature(std::string name, std::map<int, std::vector<std::string>> conns)
        : name_(std::move(name)), conns_(std::move(conns)) {
        for (const auto& [arity, names] : conns_) {
            if (arity < 0)
                throw Error("signature " + name_ + ": negative arity");
            for (const auto& c : names) {
                if (c.empty())
                    throw Error("signature " + name_ + ": empty connective name");
                if (!arity_.emplace(c, arity).second)
                    throw Error("signature " + name_ + ": duplicate connective '" + c + "'");
            }
        }
    }

    const std::string& name() const { return name_; }

    // arities in ascending order, declaration order within each arity
    const std::map<int, std::vector<std::string>>& conns() const { return conns_; }

    bool contains(const std::string& conn) const { return arity_.count(conn) != 0; }

    int arity_of(const std::string& conn) const {
        auto it = arity_.find(conn);
        if (it == arity_.end())
            throw Error("signature " + name_ + ": unknown connective '" + conn + "'");
        return it->second;
    }

    // flattened connective list: arity ascending, then declaration order
    std::vector<std::string> all_conns() const {
        std::vector<std::string> out;
        for (const auto& [arity, names] : conns_)
            out.insert(out.end(), names.begin(), names.end());
        return out;
    }

    std::size_t conn_count() const { return arity_.size(); }

    int max_arity() const { return conns_.empty() ? 0 : conns_.rbegin()->first; }

    // same connective/arity structure; display name is ignored
    friend bool operator==(const Signature& a, const Signature& b) {
        return a.conns_ == b.conns_;
    }
    friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }

private:
    std::string name_;
    std::map<int, std::vector<std::string>> conns_;
    std::unordered_map<std::string, int> arity_;
};

} // namespace lwb
