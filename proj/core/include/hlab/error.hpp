#pragma once

#include <stdexcept>
#include <string>

namespace hlab {

/// Base class of every exception thrown by hlab.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands live in spaces of different dimension.
class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs);
};

/// An argument violates the documented domain of an operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A malformed or inconsistent IIFS / lattice description.
/// `where` names the offending field ("maps[1].matrix") or "line:col".
class SpecError : public Error {
 public:
  SpecError(std::string where, const std::string& what);
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// A configurable enumeration or cloud-size cap would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// The hypothesis of a check (e.g. c <= 1/3, strong non-overlap) is unmet.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace hlab
