/* cli.hpp — the svp-vqe command line, callable in-process for tests.
 * Returns the process exit code: 0 success, 2 parameter errors, 3
 * budget/infeasibility errors, 1 anything else.
 */
#pragma once

#include <string>
#include <vector>

namespace svp {

/// args are argv[1..] (no program name).
int cli_main(const std::vector<std::string> &args);

} // namespace svp
