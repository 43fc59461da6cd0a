#pragma once

#include <iosfwd>

namespace acousim::cli {

/// Entry point shared by the acousim binary and the tests. Returns the
/// process exit status: 0 only when every output was written.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace acousim::cli
