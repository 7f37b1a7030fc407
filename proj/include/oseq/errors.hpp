#pragma once

#include <stdexcept>
#include <string>

namespace oseq {

// A request exceeded a configured ceiling (census n, table size, stream cap).
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A theorem-backed invariant failed. Always an implementation bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Floating-point evaluation left the representable range.
class OverflowError : public std::range_error {
public:
    using std::range_error::range_error;
};

} // namespace oseq
