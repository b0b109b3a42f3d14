#pragma once

#include <ostream>

namespace cfvs {

// Exit codes: 0 yes (or success for non-decision commands), 1 no, 2 error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cfvs
