#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace reqcomp {

std::string read_file(const std::filesystem::path& path);

// Writes through a temporary sibling and renames, so readers never observe a
// half-written file.
void write_file(const std::filesystem::path& path, const std::string& content);

// Lines of a UTF-8 list file with '#' comments and blank lines removed and
// surrounding whitespace trimmed.
std::vector<std::string> read_list_file(const std::filesystem::path& path);

// Location of the bundled data/ directory: $REQCOMP_DATA_DIR when set,
// otherwise the path configured at build time.
std::filesystem::path default_data_dir();

}  // namespace reqcomp
