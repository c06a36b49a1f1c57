#pragma once

#include <stdexcept>
#include <string>

namespace newscorr {

// Input data failed validation (bad file contents, broken invariants).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad invocation: unknown method names, malformed config, out-of-range options.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace newscorr
