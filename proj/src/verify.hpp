// verify.hpp — End-to-end verification suite: one entry per shipped
// quantitative claim, each with its stated tolerance.

#pragma once

#include <string>
#include <vector>

namespace dicke3::run {

struct CriterionResult {
    int index{0};
    std::string name;
    bool pass{false};
    std::string detail;
    double seconds{0.0};
};

// Runs criteria 1-9; prints one line per criterion to stdout as each finishes.
std::vector<CriterionResult> run_criteria();

// The `verify` command: table or JSON report; returns 0 iff all criteria pass.
int cmd_verify(bool json_output, const std::string& out_dir);

}  // namespace dicke3::run
