#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace recip::cli {

// Exit codes of the command-line front end.
enum Exit : int { Ok = 0, CheckFailed = 1, Usage = 2, NotConverged = 3 };

// Runs one command line; reports go to `out`, diagnostics and usage to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

// "a:b:n" -> n equally spaced points from a to b.
std::vector<double> parse_grid(const std::string& spec);
// "1,2.5,3" -> values.
std::vector<double> parse_list(const std::string& spec);
// "5x3,7x4" -> pairs.
std::vector<std::pair<unsigned long, unsigned long>> parse_pairs(const std::string& spec);

}  // namespace recip::cli
