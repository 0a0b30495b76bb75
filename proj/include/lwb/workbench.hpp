#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "lwb/algebraization.hpp"
#include "lwb/catalogs.hpp"
#include "lwb/checks.hpp"
#include "lwb/representation.hpp"

namespace lwb {

struct BoundsOverride {
    std::optional<int> nvars;
    std::optional<int> depth;
    std::optional<int> max_premises;

    CheckBounds apply(CheckBounds b) const {
        if (nvars)
            b.nvars = *nvars;
        if (depth)
            b.depth = *depth;
        if (max_premises)
            b.max_premises = *max_premises;
        return b;
    }
};

// A declarative bundle of named signatures, algebras, logics, morphisms,
// pairs, quasivarieties, catalogs, witnesses and checks, loaded from JSON
// with formulas written in the ordinary grammar.  Everything is resolved and
// validated eagerly.
class Workbench {
public:
    using json = nlohmann::ordered_json;

    struct Check {
        std::string kind;
        json params;
        CheckBounds bounds;
    };

    static Workbench parse(const std::string& text) {
        if (text.find_first_not_of(" \t\r\n") == std::string::npos)
            return Workbench();
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw Error("workbench: " + std::string(e.what()));
        }
        return from_json(j);
    }

    static Workbench load(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw Error("workbench: cannot open " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse(buf.str());
    }

    static Workbench from_json(const json& j) {
        if (!j.is_object())
            throw Error("workbench: top level must be an object");
        static const std::vector<std::string> known{
            "signatures", "algebras",  "logics",    "morphisms", "pairs",
            "quasivarieties", "catalogs", "witnesses", "checks"};
        for (const auto& [key, value] : j.items()) {
            if (std::find(known.begin(), known.end(), key) == known.end())
                throw Error("workbench: unknown section '" + key + "'");
            if (!value.is_object())
                throw Error("workbench: section '" + key + "' must be an object");
        }
        Workbench w;
        w.load_signatures(j);
        w.load_algebras(j);
        w.load_logics(j);
        w.load_morphisms(j);
        w.load_pairs(j);
        w.load_quasivarieties(j);
        w.load_catalogs(j);
        w.load_witnesses(j);
        w.load_checks(j);
        return w;
    }

    std::vector<std::string> check_names() const {
        std::vector<std::string> out;
        for (const auto& [name, c] : checks_)
            out.push_back(name);
        return out;
    }

    std::string summary() const {
        std::ostringstream out;
        out << signatures_.size() << " signatures, " << algebras_.size() << " algebras, "
            << logics_.size() << " logics, " << morphisms_.size() << " morphisms, "
            << pairs_.size() << " pairs, " << quasivarieties_.size() << " quasivarieties, "
            << catalogs_.size() << " catalogs, " << witnesses_.size() << " witnesses, "
            << checks_.size() << " checks";
        return out.str();
    }

    Report run(const std::string& name, const BoundsOverride& over = {}) const {
        auto it = checks_.find(name);
        if (it == checks_.end())
            throw Error("workbench: unknown check '" + name + "'");
        const Check& c = it->second;
        const CheckBounds b = over.apply(c.bounds);
        const json& p = c.params;
        if (c.kind == "translation")
            return check_translation(logic(p, "source"), logic(p, "target"),
                                     morphism(p, "morphism"), b);
        if (c.kind == "conservativity")
            return check_conservative(logic(p, "source"), logic(p, "target"),
                                      morphism(p, "morphism"), b);
        if (c.kind == "density")
            return check_dense(logic(p, "source"), logic(p, "target"), morphism(p, "morphism"),
                               b);
        if (c.kind == "congruentiality")
            return check_congruential(logic(p, "logic"), b);
        if (c.kind == "tarskian")
            return check_tarskian(logic(p, "logic"), b);
        if (c.kind == "morphism-equivalence")
            return morphisms_equivalent(logic(p, "source"), logic(p, "target"),
                                        morphism(p, "left"), morphism(p, "right"), b);
        if (c.kind == "bp-conditions")
            return check_bp_conditions(logic(p, "logic"), quasivariety(p, "quasivariety"),
                                       pair(p, "pair"), b);
        if (c.kind == "equivalence-collapse")
            return check_lindenbaum(logic(p, "logic"), pair(p, "pair"), b);
        if (c.kind == "free-object") {
            LindenbaumResult lt = lindenbaum_quotient(logic(p, "logic"), b.nvars, b.depth);
            return verify_free_object(logic(p, "logic"), lt, quasivariety(p, "quasivariety"),
                                      catalog(p, "tests"));
        }
        if (c.kind == "qv-restriction")
            return check_qv_restriction(morphism(p, "morphism"), quasivariety(p, "qv_source"),
                                        quasivariety(p, "qv_target"), catalog(p, "catalog"));
        if (c.kind == "natural-epi")
            return check_natural_epi(morphism(p, "morphism"), quasivariety(p, "qv_source"),
                                     quasivariety(p, "qv_target"), catalog(p, "catalog"));
        if (c.kind == "full-faithful")
            return check_full_faithful(morphism(p, "morphism"), catalog(p, "catalog"));
        if (c.kind == "roundtrip")
            return roundtrip_check(morphism(p, "morphism"), logic(p, "logic"), b);
        if (c.kind == "quotient-logic") {
            std::optional<AlgebraizingPair> pr;
            if (p.contains("pair"))
                pr = pair(p, "pair");
            return construct_quotient_logic(logic(p, "source"), logic(p, "middle"),
                                            logic(p, "target"), morphism(p, "morphism"),
                                            morphism(p, "dense_morphism"), pr, b)
                .report;
        }
        if (c.kind == "glivenko")
            return check_glivenko(catalog(p, "catalog"));
        if (c.kind == "glivenko-adjunction")
            return check_glivenko_adjunction(catalog(p, "catalog"),
                                             catalog(p, "boolean_catalog"));
        if (c.kind == "stable-morita")
            return check_stable_morita(witness(p, "witness"));
        if (c.kind == "membership") {
            MembershipResult m =
                in_quasivariety(algebra(p, "algebra"), quasivariety(p, "quasivariety"));
            Report r("membership", p.at("algebra").get<std::string>() + " in " +
                                       p.at("quasivariety").get<std::string>());
            if (m.member)
                r.pass("member");
            else
                r.fail("member", m.witness);
            return r;
        }
        throw Error("workbench: check '" + name + "' has unknown kind '" + c.kind + "'");
    }

    const std::map<std::string, Check>& checks() const { return checks_; }

private:
    // ---- reference resolution ----

    static std::string str_field(const json& p, const std::string& key,
                                 const std::string& where) {
        if (!p.contains(key) || !p.at(key).is_string())
            throw Error("workbench: " + where + " needs a string field '" + key + "'");
        return p.at(key).get<std::string>();
    }

    const Signature& signature_ref(const std::string& name, const std::string& where) const {
        auto it = signatures_.find(name);
        if (it == signatures_.end())
            throw Error("workbench: unknown signature '" + name + "' referenced by " + where);
        return it->second;
    }
    const FiniteAlgebra& algebra_ref(const std::string& name, const std::string& where) const {
        auto it = algebras_.find(name);
        if (it == algebras_.end())
            throw Error("workbench: unknown algebra '" + name + "' referenced by " + where);
        return it->second;
    }
    const Logic& logic_ref(const std::string& name, const std::string& where) const {
        auto it = logics_.find(name);
        if (it == logics_.end())
            throw Error("workbench: unknown logic '" + name + "' referenced by " + where);
        return it->second;
    }
    const FlexMorphism& morphism_ref(const std::string& name, const std::string& where) const {
        auto it = morphisms_.find(name);
        if (it == morphisms_.end())
            throw Error("workbench: unknown morphism '" + name + "' referenced by " + where);
        return it->second;
    }
    const AlgebraizingPair& pair_ref(const std::string& name, const std::string& where) const {
        auto it = pairs_.find(name);
        if (it == pairs_.end())
            throw Error("workbench: unknown pair '" + name + "' referenced by " + where);
        return it->second;
    }
    const QuasivarietySpec& qv_ref(const std::string& name, const std::string& where) const {
        auto it = quasivarieties_.find(name);
        if (it == quasivarieties_.end())
            throw Error("workbench: unknown quasivariety '" + name + "' referenced by " + where);
        return it->second;
    }
    const std::vector<FiniteAlgebra>& catalog_ref(const std::string& name,
                                                  const std::string& where) const {
        auto it = catalogs_.find(name);
        if (it == catalogs_.end())
            throw Error("workbench: unknown catalog '" + name + "' referenced by " + where);
        return it->second;
    }
    const MoritaWitness& witness_ref(const std::string& name, const std::string& where) const {
        auto it = witnesses_.find(name);
        if (it == witnesses_.end())
            throw Error("workbench: unknown witness '" + name + "' referenced by " + where);
        return it->second;
    }

    const Logic& logic(const json& p, const std::string& key) const {
        return logic_ref(str_field(p, key, "a check"), "a check");
    }
    const FlexMorphism& morphism(const json& p, const std::string& key) const {
        return morphism_ref(str_field(p, key, "a check"), "a check");
    }
    const AlgebraizingPair& pair(const json& p, const std::string& key) const {
        return pair_ref(str_field(p, key, "a check"), "a check");
    }
    const QuasivarietySpec& quasivariety(const json& p, const std::string& key) const {
        return qv_ref(str_field(p, key, "a check"), "a check");
    }
    const std::vector<FiniteAlgebra>& catalog(const json& p, const std::string& key) const {
        return catalog_ref(str_field(p, key, "a check"), "a check");
    }
    const MoritaWitness& witness(const json& p, const std::string& key) const {
        return witness_ref(str_field(p, key, "a check"), "a check");
    }
    const FiniteAlgebra& algebra(const json& p, const std::string& key) const {
        return algebra_ref(str_field(p, key, "a check"), "a check");
    }

    // ---- section loaders ----

    void load_signatures(const json& j) {
        if (!j.contains("signatures"))
            return;
        for (const auto& [name, spec] : j.at("signatures").items()) {
            const std::string where = "signature '" + name + "'";
            if (!spec.is_object() || !spec.contains("connectives") ||
                !spec.at("connectives").is_object())
                throw Error("workbench: " + where + " needs a 'connectives' object");
            std::map<int, std::vector<std::string>> conns;
            for (const auto& [cn, ar] : spec.at("connectives").items()) {
                if (!ar.is_number_integer())
                    throw Error("workbench: " + where + ": arity of '" + cn +
                                "' must be an integer");
                conns[ar.get<int>()].push_back(cn);
            }
            signatures_.emplace(name, Signature(name, std::move(conns)));
        }
    }

    void load_algebras(const json& j) {
        if (!j.contains("algebras"))
            return;
        for (const auto& [name, spec] : j.at("algebras").items()) {
            const std::string where = "algebra '" + name + "'";
            const Signature& sig = signature_ref(str_field(spec, "signature", where), where);
            if (!spec.contains("size") || !spec.at("size").is_number_integer())
                throw Error("workbench: " + where + " needs an integer 'size'");
            if (!spec.contains("tables") || !spec.at("tables").is_object())
                throw Error("workbench: " + where + " needs a 'tables' object");
            std::map<std::string, std::vector<int>> tables;
            for (const auto& [cn, tbl] : spec.at("tables").items()) {
                if (!tbl.is_array())
                    throw Error("workbench: " + where + ": table of '" + cn +
                                "' must be an array");
                tables.emplace(cn, tbl.get<std::vector<int>>());
            }
            try {
                algebras_.emplace(name,
                                  FiniteAlgebra(sig, spec.at("size").get<int>(),
                                                std::move(tables), name));
            } catch (const Error& e) {
                throw Error("workbench: " + where + ": " + e.what());
            }
        }
    }

    void load_logics(const json& j) {
        if (!j.contains("logics"))
            return;
        for (const auto& [name, spec] : j.at("logics").items()) {
            const std::string where = "logic '" + name + "'";
            const Signature& sig = signature_ref(str_field(spec, "signature", where), where);
            if (!spec.contains("oracle") || !spec.at("oracle").is_object())
                throw Error("workbench: " + where + " needs an 'oracle' object");
            const json& o = spec.at("oracle");
            const std::string kind = str_field(o, "kind", where + " oracle");
            std::shared_ptr<const ConsequenceOracle> oracle;
            if (kind == "matrix-family") {
                if (!o.contains("matrices") || !o.at("matrices").is_array())
                    throw Error("workbench: " + where + " needs a 'matrices' array");
                std::vector<LogicalMatrix> family;
                for (const auto& m : o.at("matrices")) {
                    const FiniteAlgebra& alg =
                        algebra_ref(str_field(m, "algebra", where), where);
                    if (!m.contains("designated") || !m.at("designated").is_array())
                        throw Error("workbench: " + where +
                                    ": each matrix needs a 'designated' array");
                    family.emplace_back(alg, m.at("designated").get<std::vector<int>>(),
                                        alg.name());
                }
                oracle = std::make_shared<MatrixFamilyOracle>(sig, std::move(family));
            } else if (kind == "ipc") {
                oracle = std::make_shared<IpcOracle>(sig);
            } else if (kind == "axiom-search") {
                std::vector<Formula> axioms;
                if (o.contains("axioms"))
                    for (const auto& a : o.at("axioms"))
                        axioms.push_back(parse_formula(a.get<std::string>(), sig));
                std::vector<InferenceRule> rules;
                if (o.contains("rules"))
                    for (const auto& r : o.at("rules")) {
                        InferenceRule rule{str_field(r, "name", where), {},
                                           parse_formula(str_field(r, "conclusion", where), sig)};
                        if (r.contains("premises"))
                            for (const auto& pr : r.at("premises"))
                                rule.premises.push_back(
                                    parse_formula(pr.get<std::string>(), sig));
                        rules.push_back(std::move(rule));
                    }
                oracle = std::make_shared<AxiomSearchOracle>(sig, std::move(axioms),
                                                             std::move(rules));
            } else {
                throw Error("workbench: " + where + " has unknown oracle kind '" + kind + "'");
            }
            try {
                logics_.emplace(name, Logic(name, sig, std::move(oracle)));
            } catch (const Error& e) {
                throw Error("workbench: " + where + ": " + e.what());
            }
        }
    }

    void load_morphisms(const json& j) {
        if (!j.contains("morphisms"))
            return;
        for (const auto& [name, spec] : j.at("morphisms").items()) {
            const std::string where = "morphism '" + name + "'";
            const Signature& src = signature_ref(str_field(spec, "source", where), where);
            const Signature& tgt = signature_ref(str_field(spec, "target", where), where);
            if (!spec.contains("schemas") || !spec.at("schemas").is_object())
                throw Error("workbench: " + where + " needs a 'schemas' object");
            std::map<std::string, Formula> schemas;
            for (const auto& [cn, text] : spec.at("schemas").items()) {
                if (!text.is_string())
                    throw Error("workbench: " + where + ": schema of '" + cn +
                                "' must be a formula string");
                try {
                    schemas.emplace(cn, parse_formula(text.get<std::string>(), tgt));
                } catch (const Error& e) {
                    throw Error("workbench: " + where + ": " + e.what());
                }
            }
            try {
                morphisms_.emplace(name, FlexMorphism::flexible(src, tgt, std::move(schemas),
                                                                name));
            } catch (const Error& e) {
                throw Error("workbench: " + where + ": " + e.what());
            }
        }
    }

    void load_pairs(const json& j) {
        if (!j.contains("pairs"))
            return;
        for (const auto& [name, spec] : j.at("pairs").items()) {
            const std::string where = "pair '" + name + "'";
            const Signature& sig = signature_ref(str_field(spec, "signature", where), where);
            try {
                pairs_.emplace(name,
                               AlgebraizingPair::parse(str_field(spec, "text", where), sig));
            } catch (const Error& e) {
                throw Error("workbench: " + where + ": " + e.what());
            }
        }
    }

    void load_quasivarieties(const json& j) {
        if (!j.contains("quasivarieties"))
            return;
        for (const auto& [name, spec] : j.at("quasivarieties").items()) {
            const std::string where = "quasivariety '" + name + "'";
            const Signature& sig = signature_ref(str_field(spec, "signature", where), where);
            std::vector<QuasiIdentity> laws;
            bool has_laws = spec.contains("laws");
            if (has_laws) {
                for (const auto& l : spec.at("laws"))
                    try {
                        laws.push_back(QuasiIdentity::parse(l.get<std::string>(), sig));
                    } catch (const Error& e) {
                        throw Error("workbench: " + where + ": " + e.what());
                    }
            }
            std::vector<FiniteAlgebra> gens;
            bool has_gens = spec.contains("generators");
            if (has_gens)
                for (const auto& g : spec.at("generators"))
                    gens.push_back(algebra_ref(g.get<std::string>(), where));
            try {
                if (has_laws && has_gens)
                    quasivarieties_.emplace(
                        name, QuasivarietySpec(name, sig, std::move(laws), std::move(gens)));
                else if (has_laws)
                    quasivarieties_.emplace(
                        name, QuasivarietySpec::from_laws(name, sig, std::move(laws)));
                else if (has_gens)
                    quasivarieties_.emplace(
                        name, QuasivarietySpec::from_generators(name, sig, std::move(gens)));
                else
                    throw Error("needs 'laws' or 'generators'");
            } catch (const Error& e) {
                throw Error("workbench: " + where + ": " + e.what());
            }
        }
    }

    void load_catalogs(const json& j) {
        if (!j.contains("catalogs"))
            return;
        for (const auto& [name, spec] : j.at("catalogs").items()) {
            const std::string where = "catalog '" + name + "'";
            if (!spec.contains("recipe") || !spec.at("recipe").is_object())
                throw Error("workbench: " + where + " needs a 'recipe' object");
            const json& rec = spec.at("recipe");
            const std::string kind = str_field(rec, "kind", where);
            std::vector<FiniteAlgebra> algs;
            try {
                if (kind == "powerset") {
                    const Signature& sig =
                        signature_ref(str_field(spec, "signature", where), where);
                    algs = catalogs::powerset_catalog(sig,
                                                      rec.at("sizes").get<std::vector<int>>());
                } else if (kind == "heyting-chains") {
                    const Signature& sig =
                        signature_ref(str_field(spec, "signature", where), where);
                    int maxk = rec.at("max").get<int>();
                    for (int k = 1; k <= maxk; ++k)
                        algs.push_back(heyting_chain(sig, k));
                } else if (kind == "explicit") {
                    for (const auto& a : rec.at("algebras"))
                        algs.push_back(algebra_ref(a.get<std::string>(), where));
                } else {
                    throw Error("unknown recipe kind '" + kind + "'");
                }
            } catch (const json::exception& e) {
                throw Error("workbench: " + where + ": " + e.what());
            } catch (const Error& e) {
                throw Error("workbench: " + where + ": " + e.what());
            }
            catalogs_.emplace(name, std::move(algs));
        }
    }

    void load_witnesses(const json& j) {
        if (!j.contains("witnesses"))
            return;
        for (const auto& [name, spec] : j.at("witnesses").items()) {
            const std::string where = "witness '" + name + "'";
            MoritaWitness w{
                morphism_ref(str_field(spec, "t", where), where),
                morphism_ref(str_field(spec, "t_prime", where), where),
                qv_ref(str_field(spec, "qv", where), where),
                qv_ref(str_field(spec, "qv_prime", where), where),
                catalog_ref(str_field(spec, "catalog", where), where),
                catalog_ref(str_field(spec, "catalog_prime", where), where),
            };
            if (!(w.tprime.source() == w.t.target()) || !(w.tprime.target() == w.t.source()))
                throw Error("workbench: " + where + ": morphism directions do not compose");
            witnesses_.emplace(name, std::move(w));
        }
    }

    void load_checks(const json& j) {
        if (!j.contains("checks"))
            return;
        static const std::vector<std::string> kinds{
            "translation",    "conservativity",   "density",
            "congruentiality", "tarskian",        "morphism-equivalence",
            "bp-conditions",  "equivalence-collapse", "free-object",
            "qv-restriction", "natural-epi",      "full-faithful",
            "roundtrip",      "quotient-logic",   "glivenko",
            "glivenko-adjunction", "stable-morita", "membership"};
        for (const auto& [name, spec] : j.at("checks").items()) {
            const std::string where = "check '" + name + "'";
            Check c;
            c.kind = str_field(spec, "kind", where);
            if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end())
                throw Error("workbench: " + where + " has unknown kind '" + c.kind + "'");
            c.params = spec;
            if (spec.contains("bounds")) {
                const json& b = spec.at("bounds");
                if (b.contains("nvars"))
                    c.bounds.nvars = b.at("nvars").get<int>();
                if (b.contains("depth"))
                    c.bounds.depth = b.at("depth").get<int>();
                if (b.contains("premises"))
                    c.bounds.max_premises = b.at("premises").get<int>();
            }
            checks_.emplace(name, std::move(c));
            validate_check(name);
        }
    }

    // resolve every reference once at load time so dangling names surface
    // before any check runs
    void validate_check(const std::string& name) {
        const Check& c = checks_.at(name);
        const json& p = c.params;
        const std::string where = "check '" + name + "'";
        auto need_logic = [&](const char* k) { logic_ref(str_field(p, k, where), where); };
        auto need_morphism = [&](const char* k) {
            morphism_ref(str_field(p, k, where), where);
        };
        auto need_qv = [&](const char* k) { qv_ref(str_field(p, k, where), where); };
        auto need_catalog = [&](const char* k) { catalog_ref(str_field(p, k, where), where); };
        if (c.kind == "translation" || c.kind == "conservativity" || c.kind == "density") {
            need_logic("source");
            need_logic("target");
            need_morphism("morphism");
        } else if (c.kind == "congruentiality" || c.kind == "tarskian") {
            need_logic("logic");
        } else if (c.kind == "morphism-equivalence") {
            need_logic("source");
            need_logic("target");
            need_morphism("left");
            need_morphism("right");
        } else if (c.kind == "bp-conditions") {
            need_logic("logic");
            need_qv("quasivariety");
            pair_ref(str_field(p, "pair", where), where);
        } else if (c.kind == "equivalence-collapse") {
            need_logic("logic");
            pair_ref(str_field(p, "pair", where), where);
        } else if (c.kind == "free-object") {
            need_logic("logic");
            need_qv("quasivariety");
            need_catalog("tests");
        } else if (c.kind == "qv-restriction" || c.kind == "natural-epi") {
            need_morphism("morphism");
            need_qv("qv_source");
            need_qv("qv_target");
            need_catalog("catalog");
        } else if (c.kind == "full-faithful") {
            need_morphism("morphism");
            need_catalog("catalog");
        } else if (c.kind == "roundtrip") {
            need_morphism("morphism");
            need_logic("logic");
        } else if (c.kind == "quotient-logic") {
            need_logic("source");
            need_logic("middle");
            need_logic("target");
            need_morphism("morphism");
            need_morphism("dense_morphism");
            if (p.contains("pair"))
                pair_ref(str_field(p, "pair", where), where);
        } else if (c.kind == "glivenko") {
            need_catalog("catalog");
        } else if (c.kind == "glivenko-adjunction") {
            need_catalog("catalog");
            need_catalog("boolean_catalog");
        } else if (c.kind == "stable-morita") {
            witness_ref(str_field(p, "witness", where), where);
        } else if (c.kind == "membership") {
            algebra_ref(str_field(p, "algebra", where), where);
            need_qv("quasivariety");
        }
    }

    std::map<std::string, Signature> signatures_;
    std::map<std::string, FiniteAlgebra> algebras_;
    std::map<std::string, Logic> logics_;
    std::map<std::string, FlexMorphism> morphisms_;
    std::map<std::string, AlgebraizingPair> pairs_;
    std::map<std::string, QuasivarietySpec> quasivarieties_;
    std::map<std::string, std::vector<FiniteAlgebra>> catalogs_;
    std::map<std::string, MoritaWitness> witnesses_;
    std::map<std::string, Check> checks_;
};

} // namespace lwb
