#pragma once

#include <stdexcept>
#include <string>

namespace capbound {

// Inputs outside an operation's mathematical domain.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Missing or malformed data assets (CSV tables, polynomial files).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Floating-point procedures that failed to converge or lost precision.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Linear-program construction or solution failure.
struct LPError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iterative refinement (cutting planes, recursions) failed to close.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal cross-checks disagree: indicates an implementation bug, must abort.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A recursive bound failed to shrink its domain.
struct RecursionLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A point configuration violates its declared cap/separation constraints.
struct InvalidConfigurationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A partition scheme produced conflicting LP constraints (bound-generation bug).
struct InfeasibleSchemeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace capbound
