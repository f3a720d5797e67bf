#ifndef TORICRAY_CLI_HPP
#define TORICRAY_CLI_HPP

#include <string>

#include "toricray/config.hpp"

namespace toricray {

// Runs one subcommand against a loaded configuration, writing artifacts to
// cfg.out_dir. k_max caps the triangular sweep (-1 = default).
// Returns the process exit code (0 ok; exceptions are mapped by run_cli).
void run_command(const std::string& command, const RunConfig& cfg, int k_max = -1);

// Full argv entry point used by the binary; maps exceptions to exit codes
// 1 (config), 2 (numerical), 3 (invariant violation).
int run_cli(int argc, char** argv);

} // namespace toricray

#endif
