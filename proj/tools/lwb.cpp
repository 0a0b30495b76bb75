#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "lwb/lwb.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

int verdict_exit(lwb::CheckVerdict v, bool tolerate_inconclusive) {
    switch (v) {
    case lwb::CheckVerdict::Pass:
        return kExitPass;
    case lwb::CheckVerdict::Fail:
        return kExitFail;
    case lwb::CheckVerdict::Inconclusive:
        return tolerate_inconclusive ? kExitPass : kExitInconclusive;
    }
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for finite representations of propositional logics"};
    app.require_subcommand(1);

    std::string check_file, check_name;
    int nvars = -1, depth = -1, premises = -1;
    bool as_json = false, tolerate = false;
    CLI::App* check = app.add_subcommand("check", "run one named check from a workbench file");
    check->add_option("file", check_file, "workbench file")->required();
    check->add_option("check", check_name, "check name, or 'list' to show them")->required();
    check->add_option("--nvars", nvars, "override variable bound");
    check->add_option("--depth", depth, "override depth bound");
    check->add_option("--premises", premises, "override premise-set bound");
    check->add_flag("--json", as_json, "emit the report as JSON");
    check->add_flag("--tolerate-inconclusive", tolerate,
                    "exit 0 when entries are inconclusive but none fail");

    std::string suite_name;
    CLI::App* demo = app.add_subcommand("demo", "run a bundled demonstration suite");
    demo->add_option("suite", suite_name,
                     "suite name, 'acceptance' for all positive suites, or 'list'")
        ->required();

    std::string validate_file;
    CLI::App* validate = app.add_subcommand("validate", "load a workbench file and report "
                                                        "what it defines");
    validate->add_option("file", validate_file, "workbench file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (check->parsed()) {
            lwb::Workbench w = lwb::Workbench::load(check_file);
            if (check_name == "list") {
                for (const std::string& n : w.check_names())
                    std::cout << n << "\n";
                return kExitPass;
            }
            lwb::BoundsOverride over;
            if (nvars >= 0)
                over.nvars = nvars;
            if (depth >= 0)
                over.depth = depth;
            if (premises >= 0)
                over.max_premises = premises;
            lwb::Report r = w.run(check_name, over);
            if (as_json)
                std::cout << r.json().dump(2) << "\n";
            else
                std::cout << r.text();
            return verdict_exit(r.overall(), tolerate);
        }
        if (demo->parsed()) {
            if (suite_name == "list") {
                for (const std::string& n : lwb::suites::suite_names())
                    std::cout << n << "\n";
                std::cout << "acceptance\n";
                return kExitPass;
            }
            if (suite_name == "acceptance") {
                bool all = true;
                for (const lwb::suites::SuiteOutcome& s : lwb::suites::acceptance()) {
                    std::cout << (s.passed ? "[ ok ] " : "[FAIL] ") << s.name << " -- "
                              << s.statement << "\n";
                    all = all && s.passed;
                }
                return all ? kExitPass : kExitFail;
            }
            lwb::suites::SuiteOutcome s = lwb::suites::run_suite(suite_name);
            std::cout << s.text();
            return s.passed ? kExitPass : kExitFail;
        }
        if (validate->parsed()) {
            lwb::Workbench w = lwb::Workbench::load(validate_file);
            std::cout << "ok: " << w.summary() << "\n";
            return kExitPass;
        }
    } catch (const lwb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
