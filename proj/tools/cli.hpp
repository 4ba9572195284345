#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace abstrans::cli {

enum ExitCode { Ok = 0, DomainFailure = 1, ParseFailure = 2, BudgetExhausted = 3 };

/// Runs one command; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace abstrans::cli
