#pragma once

#include <stdexcept>
#include <string>

namespace corpusmix {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad configuration or usage. The CLI maps this to exit code 1.
struct ConfigError : Error {
    using Error::Error;
};

// Malformed or inconsistent input data. The CLI maps this to exit code 2.
struct DataError : Error {
    using Error::Error;
};

// Record-level invariant violation found while ingesting a manifest.
struct ValidationError : DataError {
    using DataError::DataError;
};

}  // namespace corpusmix
