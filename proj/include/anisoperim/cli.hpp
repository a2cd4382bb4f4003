#pragma once

namespace anisoperim {

// Parses argv, dispatches to one subcommand, prints results on stdout, and
// writes any requested artifact to its --out path. Returns the process exit
// status: 0 success, 1 failed verification or scenario, 2 usage or
// configuration error.
int run_cli(int argc, const char* const* argv);

}  // namespace anisoperim
