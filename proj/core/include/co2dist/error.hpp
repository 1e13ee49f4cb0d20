#pragma once

#include <stdexcept>
#include <string>

namespace co2dist {

// Invalid input: malformed files, parameters outside their domain, samples
// that are too small for the requested statistic.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure could not produce a result (no bracket, singular
// design matrix, optimizer failure that cannot be reported in-band).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace co2dist
