#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zsig {

// Entry point behind the zsig executable; testable in-process.
// Exit codes: 0 success, 1 usage or runtime error, 2 falsified consistency
// (MISMATCH), 3 inconclusive numerics.  Errors are emitted as one JSON
// object on `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace zsig
