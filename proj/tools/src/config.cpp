#include "wavematch_cli/config.hpp"

#include "wavematch_cli/recording.hpp"

#include <algorithm>
#include <fstream>

namespace wavematch::cli {

namespace {

std::string trimmed(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool flag_present(const std::vector<std::string>& args, const std::string& key) {
    const std::string flag = "--" + key;
    const std::string negated = "--no-" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a == negated || a.starts_with(flag + "=");
    });
}

} // namespace

std::map<std::string, std::string> parse_config(std::istream& in, const std::string& source) {
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trimmed(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(source, line_no, 0, "expected key=value");
        }
        auto key = trimmed(line.substr(0, eq));
        if (key.empty()) {
            throw ParseError(source, line_no, 1, "empty key");
        }
        out[key] = trimmed(line.substr(eq + 1));
    }
    return out;
}

std::map<std::string, std::string> load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidParameter("cannot open config " + path.string());
    }
    return parse_config(in, path.string());
}

std::vector<std::string> config_arguments(const std::map<std::string, std::string>& config,
                                          const std::vector<std::string>& args) {
    std::vector<std::string> extra;
    for (const auto& [key, value] : config) {
        if (flag_present(args, key)) {
            continue;
        }
        if (value == "true" || value == "false") {
            extra.push_back("--" + key + "=" + value);
        } else {
            extra.push_back("--" + key);
            extra.push_back(value);
        }
    }
    return extra;
}

} // namespace wavematch::cli
