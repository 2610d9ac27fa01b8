#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace wavematch::cli {

/// key=value lines; '#' starts a comment, blank lines are skipped.
std::map<std::string, std::string> parse_config(std::istream& in, const std::string& source = "<config>");
std::map<std::string, std::string> load_config(const std::filesystem::path& path);

/// Command-line tokens for every config entry whose flag is absent from
/// `args`, so that explicit flags win. Boolean values become --key=true / --key=false.
std::vector<std::string> config_arguments(const std::map<std::string, std::string>& config,
                                          const std::vector<std::string>& args);

} // namespace wavematch::cli
