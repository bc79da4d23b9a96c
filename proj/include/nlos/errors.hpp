// Exception hierarchy shared by the whole library. The CLI maps these to
// exit codes: ConfigError -> 2, DataError -> 3, anything else -> 1.
#pragma once

#include <stdexcept>
#include <string>

namespace nlos {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad command line arguments, malformed configuration files, invalid
// parameter combinations.
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Missing, truncated or corrupt input data (videos, manifests, weight files).
struct DataError : Error {
    explicit DataError(const std::string& msg) : Error(msg) {}
};

// Tensor / frame shape mismatches.
struct ShapeError : Error {
    explicit ShapeError(const std::string& msg) : Error(msg) {}
};

} // namespace nlos
