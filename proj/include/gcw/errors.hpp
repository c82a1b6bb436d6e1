#pragma once

#include <stdexcept>
#include <string>

namespace gcw {

// Raised when a computation would exceed a configured generator/size cap.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A mathematical invariant that must hold by construction was violated
// (for example a differential that does not square to zero).
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace gcw
