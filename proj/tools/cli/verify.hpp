// verify.hpp: invariant checks against a builtin or file-defined model

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cli/model_source.hpp"

namespace qsync::cli {

struct Check {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

std::vector<Check> run_checks(const ModelSource& source, const ParamMap& overrides = {});

void print_checks(std::ostream& out, const std::string& target, const std::vector<Check>& checks);
bool all_pass(const std::vector<Check>& checks);

} // namespace qsync::cli
