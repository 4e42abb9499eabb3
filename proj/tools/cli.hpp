#pragma once

#include <ostream>
#include <string>

namespace prabhakar::cli {

/// Runs one command. Returns the process exit code: 0 on success, 2 for
/// invalid input, 3 for a numerical failure (diagnostic written to err).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Writes the data files of a built-in experiment into dir and a short
/// listing to out. Throws UsageError for an unknown id.
void run_repro(const std::string& id, const std::string& dir, bool header, std::ostream& out);

}  // namespace prabhakar::cli
