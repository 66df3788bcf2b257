#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lexgram::cli {

// Runs the command line with args[0] as the program name. Returns the exit
// code; never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lexgram::cli
