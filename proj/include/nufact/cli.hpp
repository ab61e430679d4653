#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace nufact::cli {

// Exit codes.
inline constexpr int kHolds = 0;
inline constexpr int kFails = 1;
inline constexpr int kError = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// A path that does not exist is looked up among the bundled fixtures.
std::filesystem::path resolve_instance(const std::string& path);

}  // namespace nufact::cli
