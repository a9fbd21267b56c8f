#pragma once

#include <iosfwd>

namespace coxeterkit {

// Command-line front end. Returns the process exit status: 0 on success, 1 on
// a computation error or failed verification, 2 on bad usage.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace coxeterkit
