#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vecpack {

// Subcommands gen, solve, bench, verify. args[0] is the program name.
// Returns 0 on success, 1 on a failed verification or runtime error and 2
// on usage or parse errors.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vecpack
