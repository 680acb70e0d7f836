#pragma once

#include <stdexcept>
#include <string>

namespace bosonstar {

// Error taxonomy. The CLI maps these onto exit codes: config_error -> 1,
// invariant_violation (and subclasses) -> 2, anything else -> 3.

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user-facing configuration: unknown keys, out-of-range parameters,
// inconsistent sections. Messages name the offending key path.
struct config_error : error {
    explicit config_error(const std::string& msg) : error(msg) {}
};

// Bad argument to a library operation (grid mismatch, negative dt, ...).
struct parameter_error : error {
    explicit parameter_error(const std::string& msg) : error(msg) {}
};

// Numerical state broke an internal contract (non-finite data, residues
// above the hard threshold, normalization lost, ...).
struct invalid_state_error : error {
    explicit invalid_state_error(const std::string& msg) : error(msg) {}
};

// Requested problem size exceeds a hard cap; message reports the sizes.
struct capacity_error : error {
    explicit capacity_error(const std::string& msg) : error(msg) {}
};

// A physics invariant that the run was required to maintain failed.
struct invariant_violation : error {
    explicit invariant_violation(const std::string& msg) : error(msg) {}
};

// Runaway concentration sentinel tripped during time evolution.
struct collapse_suspected_error : invariant_violation {
    explicit collapse_suspected_error(const std::string& msg) : invariant_violation(msg) {}
};

} // namespace bosonstar
