#pragma once

#include <ostream>

namespace loewner::cli {

// Exit codes: 0 pass, 1 check failure, 2 input error, 3 numerical-step error.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace loewner::cli
