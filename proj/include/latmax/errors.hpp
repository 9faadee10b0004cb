#pragma once

#include <stdexcept>
#include <string>

namespace latmax {

// Thrown when a convolution or embedding would wrap around the periodic grid.
class padding_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when an enumeration or allocation would exceed its configured cap.
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when an operator with a singular symbol is applied to a function
// with mass at the singular frequency (e.g. Riesz transform of a function
// with nonzero mean).
class singularity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when an iterative refinement (quadrature tail, grid doubling)
// fails to meet its stated tolerance.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace latmax
