#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace selfsim::cli {

// Full command-line driver. `args` excludes the program name. Returns the
// process exit code: for `check`, 0 when every verdict is GUARANTEED, 2 when
// any is REFUTED, 1 otherwise; for the other subcommands 0 on success and 1
// on any error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace selfsim::cli
