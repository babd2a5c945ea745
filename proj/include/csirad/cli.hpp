#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace csirad::cli {

enum ExitCode : int {
    kOk = 0,
    kEvalFailed = 1,
    kIoError = 2,
    kBadArguments = 3,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name: e.g. {"calc", "--preset", "wifi-ax211"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace csirad::cli
