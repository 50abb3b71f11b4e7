#pragma once

#include <stdexcept>

namespace skos {

// Malformed or out-of-range arguments: generator indices, mismatched rings,
// composite moduli, odd values where only even ones are allowed.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Homology requested at a position whose neighbours were never materialized.
class WindowError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Valid input on which the computation itself fails: a non-invertible
// supermatrix, a failed internal cross-check, disagreeing methods.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace skos
