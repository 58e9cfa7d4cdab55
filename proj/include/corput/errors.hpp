#pragma once

#include <stdexcept>
#include <string>

namespace corput {

// Argument outside an operation's domain (bad base, p < 1, lambda below the
// range a tail bound needs, ...). The CLI maps this to exit code 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Request exceeds a configured resource cap. CLI exit code 4.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A constructed object failed one of its own invariants, e.g. a weakly
// dependent family whose terms are not centered. CLI exit code 3.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace corput
