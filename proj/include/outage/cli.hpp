#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace outage::cli {

enum ExitCode : int {
    kOk = 0,
    kValidation = 2,
    kNumeric = 3,
    kIo = 4,
};

// Entry point shared by the executable and the tests. `args` excludes the
// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "44C", "44c", "317.15K" or a bare number (Celsius). Returns Kelvin.
std::optional<double> parse_temperature(std::string_view text);

} // namespace outage::cli
