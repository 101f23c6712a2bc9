#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hlab::cli {

/// Runs one `hlab` invocation. args excludes the program name.
/// Exit status: 0 holds/success, 2 fails with witness, 3 inconclusive,
/// 1 usage or spec error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hlab::cli
