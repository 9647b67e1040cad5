#pragma once

#include <iosfwd>

namespace digh::cli {

// Runs the command line; returns 0 on success, 2 on input errors and 3 on
// numerical failures. CSV goes to `out` unless --out is given.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace digh::cli
