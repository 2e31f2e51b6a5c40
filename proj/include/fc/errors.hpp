// Copyright 2026 The fermion-complexity Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace fc {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A request exceeds a hard size limit (64-orbital word, dense cap, ...).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Operands live in different Fock sectors, or an operator would leave the
/// sector of the state it acts on.
class SectorMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to reach its tolerance, or a numerical
/// consistency check did not hold.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fc
