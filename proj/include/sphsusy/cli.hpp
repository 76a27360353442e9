#pragma once

#include <string>
#include <vector>

namespace sphsusy::cli {

/// Exit codes: 0 success/pass, 1 verification failure, 2 usage error,
/// 3 numerical non-convergence.
int run(const std::vector<std::string>& args);

int run(int argc, const char* const* argv);

}  // namespace sphsusy::cli
