#pragma once

#include <stdexcept>
#include <string>

namespace pillai {

// Malformed or out-of-domain input (bad surd, zero divisor, wrong field).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A certified decision could not be reached within the precision budget.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A search over candidates (convergents, family members) ran out of room.
struct ReductionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An exact identity that must hold did not; indicates a bug, never bad input.
struct ConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace pillai
