#pragma once

#include <stdexcept>
#include <string>

namespace starred {

// Thrown when two operands live over different signatures (n, s).
struct SignatureMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a deformation parameter sits outside the admissible domain
// Omega = C \ ({0} u {1/k : k in N}).
struct OmegaError : std::domain_error {
    using std::domain_error::domain_error;
};

// Exact evaluation hit a root of a denominator.
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Evaluation point lies outside the projective chart of M_red.
struct ChartDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Malformed input document or unparseable scalar string.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The derivative series of the geometric product did not terminate
// within the requested order.
struct OracleTruncation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace starred
