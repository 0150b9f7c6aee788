#pragma once

#include <stdexcept>
#include <string>

namespace ventgen {

// Malformed caller input: bad grids, out-of-range arguments, degenerate rules.
struct InvalidInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed external file content (EPW, CSV, JSON). Messages carry line/row numbers.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a documented constraint (ranges, completeness).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lookup of an unknown key (layout id, occupancy profile, climate label).
struct LookupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iteration budget exhausted or a metric is undefined for the given data.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Constraint solve gave up: either unsatisfiable or the restart budget ran out.
struct UnsatisfiableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem trouble (missing paths, failed writes).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ventgen
