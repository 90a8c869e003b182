#pragma once

#include <stdexcept>
#include <string>

namespace cubecx {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input data (bad array sizes, unknown names, broken face closure).
struct StructuralError : Error {
  using Error::Error;
};

// An operation was called outside its domain.
struct PreconditionError : Error {
  using Error::Error;
};

// A consistency check that should hold by construction failed.
struct IntegrityError : Error {
  using Error::Error;
};

// Unreadable or malformed input file.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace cubecx
