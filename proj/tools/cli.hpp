// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ATEM_TOOLS_CLI_HPP
#define ATEM_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace atem::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNotFound = 3, kNumeric = 4 };

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace atem::cli

#endif // ATEM_TOOLS_CLI_HPP
