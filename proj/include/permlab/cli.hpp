#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace permlab::cli {

/// Runs one verb. `args` excludes the program name. Returns the exit status:
/// 0 success, 1 usage error, 2 guard or validation error, 3 no convergence.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace permlab::cli
