#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bc {

/**
 * Driver behind the bctool binary.  `args` holds the command line without the
 * program name; reports go to `out`, diagnostics to `err`.  Returns 0 when
 * every check passes, 1 when a check fails, 2 on usage or configuration
 * errors.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bc
