#pragma once

#include <stdexcept>
#include <string>

namespace qac {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operands live in different cyclotomic fields; lift explicitly first.
struct ConductorMismatch : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct DivisionByZero : Error {
  using Error::Error;
};

/// A closure or orbit grew past its cap. The generated group may be infinite.
struct CapExceeded : Error {
  using Error::Error;
};

/// The conjugation recipe needs v orthogonal to E_x v; raised when it is not.
struct RecipeInapplicable : Error {
  using Error::Error;
};

}  // namespace qac
