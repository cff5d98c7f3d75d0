#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gmf::cli {

// Runs one subcommand. Returns 0 on success, 1 when a verification or scan
// reports a failure, 2 on usage errors. Reports go to `out` (or the file
// given by --output); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmf::cli
