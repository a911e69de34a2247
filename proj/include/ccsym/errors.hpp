#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccsym {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands belong to different algebras.
class SignatureMismatch : public Error {
public:
  using Error::Error;
};

/// Inversion of a non-unit, or a series whose reduction vanishes.
class NotInvertible : public Error {
public:
  using Error::Error;
};

/// Argument outside the domain of an operation (e.g. log of a unit that is
/// not of the form 1 - m).
class DomainError : public Error {
public:
  using Error::Error;
};

/// A result would depend on coefficients beyond a series' truncation order.
class TruncationError : public Error {
public:
  using Error::Error;
};

/// A path passes through, or too close to, a pole of a form; or loops could
/// not be laid out around the support.
class GeometryError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), detail_(what), position_(position) {}

  std::size_t position() const noexcept { return position_; }
  /// The message without the position suffix.
  const std::string& detail() const noexcept { return detail_; }

private:
  std::string detail_;
  std::size_t position_;
};

} // namespace ccsym
