// Acceptance gate: runs the full numbered check suite and prints one verdict
// line per check.
//
// Default mode exits 0 only if every check passes.  With --documented the
// exit code instead encodes agreement with the documented state of the
// suite: checks 1-11, 13 and 14 must pass, and check 12 must fail in the
// known way (the fifty-use error bound reaches only 1 - 2^-5 = 0.96875,
// short of the 0.99 the check demands; the threshold is crossed from 67
// uses).  That keeps the harness green on the expected state while still
// failing loudly if a working check regresses -- or if check 12 silently
// changes behavior in either direction.
#include "qcap/selftest.hpp"

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    bool documented = false;
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--documented") == 0) documented = true;
        else which.push_back(std::atoi(argv[i]));
    }

    const auto results = qcap::run_acceptance(which);
    int passed = 0;
    bool matches_documented = true;
    for (const auto& r : results) {
        std::printf("[%2d] %s  %-44s %s\n", r.index, r.pass ? "PASS" : "FAIL",
                    r.label.c_str(), r.detail.c_str());
        passed += r.pass ? 1 : 0;
        const bool expected_pass = r.index != 12;
        if (r.pass != expected_pass) matches_documented = false;
        if (r.index == 12 && !r.pass &&
            r.detail.find("0.96875") == std::string::npos)
            matches_documented = false;
    }
    std::printf("passed %d of %zu\n", passed, results.size());

    if (documented) {
        std::printf("documented outcome %s\n", matches_documented ? "matched" : "NOT matched");
        return matches_documented ? 0 : 1;
    }
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}
