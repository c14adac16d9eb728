#pragma once

#include <ostream>

namespace pbias {

/// Runs the command line.  Exit codes: 0 holds, 1 violation, 2 usage error
/// or tier disagreement.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pbias
