#pragma once

#include <stdexcept>
#include <string>

namespace bdglab {

// A monotone search ran out of room before its target was straddled.
class BracketExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A gauge produced a non-finite value where a finite one was required.
class GaugeOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// A gauge failed a class-membership probe that an operation requires
// (N-function, A1, A2, ...).
class ClassPreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An integrand touched bundle history beyond the index it is allowed to see.
class AdaptednessError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace bdglab
