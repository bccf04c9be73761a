#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace prnu::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;      // success, or "match" for the match command
inline constexpr int kExitError = 1;
inline constexpr int kExitNoMatch = 2;

/// Entry point used by the executable and by tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Plain `key=value` lines; '#' starts a comment, blank lines are skipped.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> load_config_file(const std::string& path);

}  // namespace prnu::cli
