#pragma once

#include <iosfwd>

namespace ramsey {

// Exit codes: 0 ok / safe, 1 violation found or P1 won, 2 usage error.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ramsey
