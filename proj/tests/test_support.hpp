#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace testsupport {

// Repo root, injected by ctest; falls back to the working directory so the
// binaries also run by hand from the build tree.
inline std::filesystem::path data_dir() {
    if (const char* env = std::getenv("DRONESEC_DATA_DIR")) return env;
    return std::filesystem::current_path();
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace testsupport
