#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace l1l2 {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFiniteError : Error {
  using Error::Error;
};

struct BadMuError : Error {
  using Error::Error;
};

struct BadAError : Error {
  using Error::Error;
};

struct EmptyVectorError : Error {
  using Error::Error;
};

// Prefix sums with S1^2 > k*S2 beyond the tolerated slack.  Such sums cannot
// come from a real vector, so the input is corrupted.
struct CauchySchwarzError : Error {
  using Error::Error;
};

// Root polishing failed to meet the residual acceptance criterion.
struct PolishDivergenceError : Error {
  using Error::Error;
};

// Malformed input record; index is zero-based.
struct ParseError : Error {
  ParseError(std::size_t record_index, const std::string& msg)
      : Error("record " + std::to_string(record_index) + ": " + msg),
        record(record_index) {}
  std::size_t record;
};

}  // namespace l1l2
