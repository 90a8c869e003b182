#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cubecx::cli {

// args excludes the program name. Returns 0 on success or verdict true, 1 on
// verdict false, 2 on errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubecx::cli
