#pragma once

#include <iosfwd>

namespace relayopt::cli {

/// Runs one command line. Exit codes: 0 success, 1 usage, 2 domain, 3 guard.
/// Results go to `out` as JSON; errors go to `err` as JSON.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace relayopt::cli
