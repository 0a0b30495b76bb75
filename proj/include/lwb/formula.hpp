#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lwb/error.hpp"
#include "lwb/signature.hpp"

namespace lwb {

// An immutable formula tree over variables x0, x1, ... and named
// connectives.  Nodes are shared; copies are cheap.  Depth and a structural
// hash are cached at construction.
class Formula {
public:
    Formula() : Formula(var(0)) {}

    static Formula var(int index) {
        if (index < 0)
            throw Error("formula: negative variable index");
        auto n = std::make_shared<Node>();
        n->var = index;
        n->depth = 0;
        n->hash = 0x9e3779b97f4a7c15ull ^ (static_cast<std::size_t>(index) * 0xff51afd7ed558ccdull);
        return Formula(std::move(n));
    }

    static Formula app(std::string conn, std::vector<Formula> args) {
        if (conn.empty())
            throw Error("formula: empty connective name");
        auto n = std::make_shared<Node>();
        n->var = -1;
        n->conn = std::move(conn);
        n->args = std::move(args);
        int d = 0;
        std::size_t h = 0xcbf29ce484222325ull;
        for (char c : n->conn)
            h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ull;
        for (const auto& a : n->args) {
            d = std::max(d, a.depth() + 1);
            h = (h ^ a.hash()) * 0x100000001b3ull;
        }
        n->depth = n->args.empty() ? 0 : d;
        n->hash = h | 1; // never collides with the var-hash low-bit pattern? keep nonzero
        return Formula(std::move(n));
    }

    // checks conn/arity against sig
    static Formula app(const Signature& sig, const std::string& conn, std::vector<Formula> args) {
        int ar = sig.arity_of(conn);
        if (ar != static_cast<int>(args.size()))
            throw Error("formula: connective '" + conn + "' expects " + std::to_string(ar) +
                        " arguments, got " + std::to_string(args.size()));
        return app(conn, std::move(args));
    }

    bool is_var() const { return node_->var >= 0; }
    int var_index() const { return node_->var; }
    const std::string& conn() const { return node_->conn; }
    const std::vector<Formula>& args() const { return node_->args; }

    // height of the tree; variables and 0-ary connectives have depth 0
    int depth() const { return node_->depth; }
    std::size_t hash() const { return node_->hash; }

    void collect_vars(std::set<int>& out) const {
        if (is_var()) {
            out.insert(node_->var);
            return;
        }
        for (const auto& a : node_->args)
            a.collect_vars(out);
    }

    std::set<int> vars() const {
        std::set<int> out;
        collect_vars(out);
        return out;
    }

    // 1 + largest variable index, 0 if no variables occur
    int var_span() const {
        if (is_var())
            return node_->var + 1;
        int m = 0;
        for (const auto& a : node_->args)
            m = std::max(m, a.var_span());
        return m;
    }

    std::size_t node_count() const {
        std::size_t n = 1;
        for (const auto& a : node_->args)
            n += a.node_count();
        return n;
    }

    bool same_node(const Formula& o) const { return node_ == o.node_; }

    friend bool operator==(const Formula& a, const Formula& b) {
        if (a.node_ == b.node_)
            return true;
        if (a.hash() != b.hash())
            return false;
        if (a.node_->var != b.node_->var || a.node_->conn != b.node_->conn ||
            a.node_->args.size() != b.node_->args.size())
            return false;
        for (std::size_t i = 0; i < a.node_->args.size(); ++i)
            if (!(a.node_->args[i] == b.node_->args[i]))
                return false;
        return true;
    }
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

    const void* node_id() const { return node_.get(); }

private:
    struct Node {
        int var = -1;
        std::string conn;
        std::vector<Formula> args;
        int depth = 0;
        std::size_t hash = 0;
    };

    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Simultaneous substitution xi := env[i]; variables absent from env are left
// fixed.
inline Formula substitute(const Formula& phi, const std::map<int, Formula>& env) {
    if (phi.is_var()) {
        auto it = env.find(phi.var_index());
        return it == env.end() ? phi : it->second;
    }
    if (phi.args().empty())
        return phi;
    std::vector<Formula> args;
    args.reserve(phi.args().size());
    bool changed = false;
    for (const auto& a : phi.args()) {
        args.push_back(substitute(a, env));
        if (!args.back().same_node(a))
            changed = true;
    }
    return changed ? Formula::app(phi.conn(), std::move(args)) : phi;
}

// checks that every connective occurring in phi belongs to sig with the
// right arity
inline void check_over(const Formula& phi, const Signature& sig) {
    if (phi.is_var())
        return;
    if (sig.arity_of(phi.conn()) != static_cast<int>(phi.args().size()))
        throw Error("formula uses '" + phi.conn() + "' with wrong arity for signature " +
                    sig.name());
    for (const auto& a : phi.args())
        check_over(a, sig);
}

} // namespace lwb
