#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nabla {

// Full command-line driver. args excludes the program name. Returns the
// process exit status: 0 success, 1 computation error, 2 usage error,
// 3 verification failure.
int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace nabla
