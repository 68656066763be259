#pragma once

#include <ostream>

namespace prodnet::cli {

// Entry point of the `prodnet` command. Exit codes: 0 success, 1 analysis
// error (the error name is written to `err`), 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace prodnet::cli
