#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simpleroute {

// Command-line front end shared by the binary and the tests. args excludes
// the program name. Returns the process exit code: 0 success, 1 usage or
// input error, 2 unreachable endpoints, 3 size guard.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace simpleroute
