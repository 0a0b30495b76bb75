#include <cstdio>
#include <exception>
#include <string>

#include "lwb/lwb.hpp"

// Runs the ten demonstration suites end to end and prints one verdict line
// per criterion.  Exit status is the number of failing suites.

int main() {
    int failures = 0;
    int index = 0;
    for (const std::string& name : lwb::suites::suite_names()) {
        if (name == "negative-controls")
            continue;
        ++index;
        try {
            lwb::suites::SuiteOutcome s = lwb::suites::run_suite(name);
            if (!s.passed)
                ++failures;
            std::printf("criterion %2d  %-18s  %s\n", index, s.name.c_str(),
                        s.passed ? "pass" : "FAIL");
            std::printf("              %s\n", s.statement.c_str());
        } catch (const std::exception& e) {
            ++failures;
            std::printf("criterion %2d  %-18s  FAIL (error: %s)\n", index, name.c_str(),
                        e.what());
        }
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("all %d criteria pass\n", index);
    else
        std::printf("%d of %d criteria FAILED\n", failures, index);
    return failures;
}
