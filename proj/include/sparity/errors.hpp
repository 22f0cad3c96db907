#pragma once

#include <stdexcept>
#include <string>

namespace sparity {

/// Caller broke a documented precondition (length mismatch, parameter out of range, ...).
struct contract_violation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// sole_point() on a space that still has free coordinates.
struct not_singleton : std::logic_error {
    using std::logic_error::logic_error;
};

/// An enumeration would exceed its configured budget.
struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Labels are inconsistent with every hypothesis the learner tracks
/// (noisy labels, or a target outside PAR(k)).
struct inconsistent_stream : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct source_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File could not be opened, read, or written.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Every flip set made the inner learner fail.
struct no_candidates : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw contract_violation(what);
}

} // namespace sparity
