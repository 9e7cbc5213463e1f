#ifndef JACOBI_ERRORS_HPP
#define JACOBI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jacobi {

/// Bad user input: invalid coefficients, malformed config, schema violation.
struct InvalidInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical procedure failed to converge or hit a singular point.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scattering data violates a structural condition required for reconstruction
/// (e.g. the Marchenko radicand is nonpositive).
struct DataNotInClassError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace jacobi

#endif
