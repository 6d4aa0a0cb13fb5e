#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mixsing::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

// args excludes the program name. Writes exactly one report to `out` on success.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Manifest lines are argument lists; relative file arguments resolve against `base`.
std::vector<std::vector<std::string>> read_manifest(const std::filesystem::path& manifest);

}  // namespace mixsing::cli
