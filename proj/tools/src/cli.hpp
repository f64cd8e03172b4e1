#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace chanlearn::cli {

/// Resolved invocation: the merged config document and where it came from.
struct Invocation {
  nlohmann::json config;
  bool help = false;
};

/// Parses argv (without the program name) into a config document. A
/// --config file is loaded first and any flags given on the command line
/// replace its keys. Throws chanlearn::Error(kConfig) on bad usage.
Invocation parse_args(const std::vector<std::string>& args, std::ostream& out);

/// Runs the CLI end to end. Returns the process exit code: 0 on success,
/// 2 for usage / config errors, 1 for failures during the run.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chanlearn::cli
