#pragma once

#include <ostream>

namespace sparsedyn::harness {

/// Entry point of the command-line tool. Returns 0 on success, 1 for
/// configuration or parameter errors and 2 for solver failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sparsedyn::harness
