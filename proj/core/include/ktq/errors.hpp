#pragma once

#include <stdexcept>
#include <string>

namespace ktq {

// Raised when user-supplied data (instance files, tables, twists) fails
// validation.  CLI maps this to exit code 2.
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internal consistency guarantee breaks (e.g. a conjugation
// image fails to match a basis character).  CLI maps this to exit code 1.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ktq
