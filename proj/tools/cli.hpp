#pragma once

#include <iosfwd>

namespace crisim::cli {

/// Runs one `crisim` invocation. Returns the process exit code: 0 success,
/// 1 operational error, 2 completed with rejected rows.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crisim::cli
