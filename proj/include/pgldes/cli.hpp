#pragma once

namespace pgldes {

// Full command-line front end; returns the process exit code.  Kept in the
// library so tests can drive it in-process.
int run_cli(int argc, const char* const* argv);

}  // namespace pgldes
