#pragma once

#include <ostream>

namespace qmt::bench {

/// Entry point of the qmt tool. Returns 0 on success, 1 on runtime failure
/// (including a failed bound check) and 2 for usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qmt::bench
