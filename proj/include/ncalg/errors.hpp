#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncalg {

/* Base class for all library errors. */
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Malformed input: bad JSON, bad formula text, bad number syntax.
 * The CLI maps these to exit code 2. */
struct FormatError : Error {
  using Error::Error;
};

/* Formula parse error; `position` is a 0-based byte offset into the source. */
struct SyntaxError : FormatError {
  SyntaxError(const std::string& what, std::size_t pos)
      : FormatError(what + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

/* Variable index out of range at parse time, e.g. "t0". */
struct VarIndexError : SyntaxError {
  using SyntaxError::SyntaxError;
};

/* Caller violated a documented precondition. The CLI maps these to exit 3. */
struct PreconditionError : Error {
  using Error::Error;
};

struct NonSquareError : PreconditionError {
  using PreconditionError::PreconditionError;
};

struct ShapeMismatchError : PreconditionError {
  using PreconditionError::PreconditionError;
};

/* Two operands carry different coefficient fields. */
struct FieldMismatchError : PreconditionError {
  using PreconditionError::PreconditionError;
};

/* Quiver weight pairs nontrivially with the dimension vector. */
struct NonzeroPairingError : PreconditionError {
  using PreconditionError::PreconditionError;
};

struct CyclicQuiverError : PreconditionError {
  using PreconditionError::PreconditionError;
};

/* inverse() on a singular matrix, or division by zero in a field. */
struct SingularError : Error {
  using Error::Error;
};

}  // namespace ncalg
