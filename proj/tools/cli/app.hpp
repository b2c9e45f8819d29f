#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace neurochaos::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs the command line (without the program name). Reports go to the output
// directory; progress and errors to the given streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Data directory used to resolve reference dataset keys; NEUROCHAOS_DATA_DIR
// overrides the built-in default.
std::filesystem::path default_data_dir();

}  // namespace neurochaos::cli
