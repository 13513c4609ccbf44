#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lrt::cli {

// Exit status: 0 all checks pass, 1 a verification failed, 2 invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lrt::cli
