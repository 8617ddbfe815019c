#pragma once

// Command-line front end, separated from main() so tests can drive it.
// run() takes the arguments after the program name and returns the exit
// code: 0 on success, 2 for invalid input or usage, 1 for internal errors.

#include <iosfwd>
#include <string>
#include <vector>

namespace parrondo::cli {

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace parrondo::cli
