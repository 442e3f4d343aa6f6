// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef ATEM_ERROR_HPP
#define ATEM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace atem {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (degree mismatch, wrong problem kind, ...).
class ContractError : public Error {
public:
  using Error::Error;
};

/// Overflow, NaN, failed bracketing and other numeric breakdowns.
class NumericError : public Error {
public:
  using Error::Error;
};

/// Argument outside the domain of a function (e.g. negative radius).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Malformed or invalid problem definition.
class SpecError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace atem

#endif // ATEM_ERROR_HPP
