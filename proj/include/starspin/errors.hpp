#ifndef STARSPIN_ERRORS_HPP
#define STARSPIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace starspin {

/// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two multivectors from structurally different signatures met in one operation.
struct SignatureMismatch : Error {
  using Error::Error;
};

/// A generator label or index that the signature does not contain.
struct UnknownGenerator : Error {
  using Error::Error;
};

/// More generators requested than the 24-generator blade mask supports.
struct CapacityExceeded : Error {
  using Error::Error;
};

/// Input outside an operation's domain (odd-grade part where even is required,
/// non-scalar time argument, zero mass, mismatched set sizes and the like).
struct DomainError : Error {
  using Error::Error;
};

/// H * H is not a strictly positive real scalar, so no energy can be extracted.
struct DegenerateHamiltonian : Error {
  using Error::Error;
};

/// Singular matrix in a linear substitution.
struct SingularMatrix : Error {
  using Error::Error;
};

/// Expression text that does not lex or parse; carries a 0-based offset.
struct ParseError : Error {
  size_t position;
  ParseError(const std::string& what, size_t pos)
      : Error(what + " at offset " + std::to_string(pos)), position(pos) {}
};

}  // namespace starspin

#endif
