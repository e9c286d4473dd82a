#pragma once

#include <iosfwd>

namespace elt {

/// Entry point of the `elt` command-line tool. Returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace elt
