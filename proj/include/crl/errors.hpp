#pragma once

#include <stdexcept>

namespace crl {

// Bad caller input: out-of-range counts, nonpositive powers, empty grids.
struct invalid_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The requested closed form does not hold for these parameters
// (e.g. P_T <= P_J for the RRS detection theorem, phi >= 1 for MMRS).
struct closed_form_invalid : std::domain_error {
  using std::domain_error::domain_error;
};

// Threshold bracket expansion failed to enclose a minimum.
struct no_interior_minimum : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace crl
