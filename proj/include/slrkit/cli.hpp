#pragma once

// The slrkit command line.

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace slrkit {

/// $SLRKIT_WORDNET when set, else the WordNet directory of the build.
std::filesystem::path default_lexicon_dir();

/// Runs one command line (without the program name). Returns the exit
/// status: 0 success, 1 finished with flagged content, 2 usage or resource
/// error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slrkit
