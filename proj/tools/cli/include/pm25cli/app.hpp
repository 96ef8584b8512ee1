#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pm25::cli {

/// Exit codes shared by every command.
enum ExitCode : int {
    kOk = 0,
    kDataError = 1,   // unreadable input, schema error, too little data
    kUsageError = 2,  // bad flags or config
};

/// Entry point behind the `pm25` executable. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pm25::cli
