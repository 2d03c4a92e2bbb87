#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bohmcl::cli {

// Exit codes: 0 success, 2 usage/parameter error, 3 numerical error,
// 4 validation failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bohmcl::cli
