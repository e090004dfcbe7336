#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bix {

/// Runs one CLI invocation. Exit codes: 0 success / attack reproduced,
/// 1 verification rejected or adversary outcome contrary to expectation,
/// 2 usage, I/O, or file-format error.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err);

}  // namespace bix
