#pragma once

#include <iosfwd>

namespace oscsum {

// Full CLI entry point, callable in-process for tests.  Returns the exit
// code: 0 ok, 2 usage, 3 budget, 4 precondition, 5 internal.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oscsum
