#pragma once

#include <ostream>

namespace edsp::cli {

enum ExitCode : int {
    ok = 0,
    config_error = 1,
    verification_failure = 2,
    budget_truncation = 3,
};

/// Entry point of the `edsp` tool; subcommands gen, powers, solve, verify.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace edsp::cli
