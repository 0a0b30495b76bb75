#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "lwb/error.hpp"

namespace lwb {

enum class CheckVerdict { Pass, Fail, Inconclusive };

inline const char* to_string(CheckVerdict v) {
    switch (v) {
    case CheckVerdict::Pass:
        return "pass";
    case CheckVerdict::Fail:
        return "fail";
    default:
        return "inconclusive";
    }
}

struct ReportEntry {
    std::string instance;
    CheckVerdict verdict;
    std::string witness;
};

// Outcome of one check: a list of entries plus tallies.  Rendering is
// deterministic so runs can be compared byte for byte.
class Report {
public:
    Report(std::string check, std::string subject)
        : check_(std::move(check)), subject_(std::move(subject)) {}

    void add(std::string instance, CheckVerdict v, std::string witness = "") {
        entries_.push_back({std::move(instance), v, std::move(witness)});
    }
    void pass(std::string instance) { add(std::move(instance), CheckVerdict::Pass); }
    void fail(std::string instance, std::string witness) {
        add(std::move(instance), CheckVerdict::Fail, std::move(witness));
    }
    void inconclusive(std::string instance, std::string witness = "") {
        add(std::move(instance), CheckVerdict::Inconclusive, std::move(witness));
    }

    // fold another report in, prefixing its entries
    void absorb(const Report& other) {
        for (const auto& e : other.entries_)
            entries_.push_back({other.check_ + ": " + e.instance, e.verdict, e.witness});
    }

    const std::string& check() const { return check_; }
    const std::string& subject() const { return subject_; }
    const std::vector<ReportEntry>& entries() const { return entries_; }

    int passed() const { return count(CheckVerdict::Pass); }
    int failed() const { return count(CheckVerdict::Fail); }
    int inconclusive_count() const { return count(CheckVerdict::Inconclusive); }

    CheckVerdict overall() const {
        if (failed() > 0)
            return CheckVerdict::Fail;
        if (inconclusive_count() > 0)
            return CheckVerdict::Inconclusive;
        return CheckVerdict::Pass;
    }
    bool ok() const { return overall() == CheckVerdict::Pass; }

    std::string text() const {
        std::string out = "== " + check_ + ": " + subject_ + "\n";
        for (const auto& e : entries_) {
            out += e.verdict == CheckVerdict::Pass           ? "  [pass] "
                   : e.verdict == CheckVerdict::Fail         ? "  [FAIL] "
                                                             : "  [inc.] ";
            out += e.instance;
            out += "\n";
            if (!e.witness.empty())
                out += "         witness: " + e.witness + "\n";
        }
        out += "-- " + std::to_string(entries_.size()) + " entries, " +
               std::to_string(passed()) + " pass, " + std::to_string(failed()) + " fail, " +
               std::to_string(inconclusive_count()) + " inconclusive; verdict " +
               to_string(overall()) + "\n";
        return out;
    }

    nlohmann::ordered_json json() const {
        nlohmann::ordered_json j;
        j["check"] = check_;
        j["subject"] = subject_;
        j["entries"] = nlohmann::ordered_json::array();
        for (const auto& e : entries_) {
            nlohmann::ordered_json je;
            je["instance"] = e.instance;
            je["verdict"] = to_string(e.verdict);
            if (!e.witness.empty())
                je["witness"] = e.witness;
            j["entries"].push_back(je);
        }
        j["summary"] = {{"entries", entries_.size()},
                        {"pass", passed()},
                        {"fail", failed()},
                        {"inconclusive", inconclusive_count()},
                        {"verdict", to_string(overall())}};
        return j;
    }

private:
    int count(CheckVerdict v) const {
        int n = 0;
        for (const auto& e : entries_)
            if (e.verdict == v)
                ++n;
        return n;
    }

    std::string check_;
    std::string subject_;
    std::vector<ReportEntry> entries_;
};

} // namespace lwb
