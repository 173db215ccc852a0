#pragma once

#include <stdexcept>
#include <string>

namespace ifslab {

// Bad user input or violated precondition. CLI exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured budget (word count, sample count, coding depth) was exceeded.
// CLI exit code 3.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested accuracy cannot be met at the current coding depth.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& msg) : std::runtime_error(msg) {}
};

// An inequality that must hold by theorem failed with exact arithmetic.
// CLI exit code 4.
struct InternalCheckError : std::logic_error {
    explicit InternalCheckError(const std::string& msg) : std::logic_error(msg) {}
};

inline void internal_check(bool ok, const std::string& msg) {
    if (!ok) throw InternalCheckError(msg);
}

}  // namespace ifslab
