#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zetalin::cli {

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics and usage to `err`. Returns 0 on success, 2 for invalid
/// input and 3 when a computation fails its accuracy contract.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lines of a key=value config file turned into "--key=value" arguments,
/// skipping keys already given on the command line. Blank lines and lines
/// starting with '#' are ignored; "key=true" becomes "--key", "key=false"
/// is dropped. Throws ParseError for malformed lines.
std::vector<std::string> config_arguments(const std::string& path, const std::vector<std::string>& given);

}  // namespace zetalin::cli
