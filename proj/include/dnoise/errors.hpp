#pragma once

#include <stdexcept>
#include <string>

namespace dnoise {

// Invalid user-facing configuration (experiment files, CLI arguments,
// unsupported domain/noise combinations). The CLI maps this to exit code 2.
// Misuse of library preconditions throws std::invalid_argument; points
// outside the geometric domain of an operation throw std::domain_error.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dnoise
