#pragma once

#include <stdexcept>
#include <string>

namespace insulab {

// Error taxonomy shared by all modules. Everything derives from insulab::error
// so callers (and the CLI exit-code mapping) can distinguish bad input from
// numerical breakdown.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside a documented precondition (bad order, negative radius, ...).
struct domain_error : error {
    using error::error;
};

// Structured input fails its invariants (e.g. source negative on the grid).
struct validation_error : error {
    using error::error;
};

// Operation called outside the regime it models (e.g. lambda_m with m <= m0).
struct regime_error : error {
    using error::error;
};

// Root bracketing failed: no sign change in [lo, hi].
struct bracket_error : error {
    using error::error;
};

// A user-supplied function returned a non-finite value.
struct evaluation_error : error {
    using error::error;
};

// Mesh construction produced degenerate elements.
struct mesh_error : error {
    using error::error;
};

// Optimal-distribution request with an identically zero boundary trace.
struct degenerate_distribution_error : error {
    using error::error;
};

// Solver did not converge or an internal consistency check failed.
struct numerical_error : error {
    using error::error;
};

// A theorem-backed postcondition was violated at runtime.
struct verification_error : error {
    using error::error;
};

// Requested computation is defined only for specific dimensions.
struct unsupported_dimension_error : error {
    using error::error;
};

}  // namespace insulab
