#pragma once

#include <stdexcept>
#include <string>

namespace qlmass {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (out-of-range radius,
/// non-Lorentzian matrix, H <= -2, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The isometric embedding into H^3 could not be constructed.
class EmbeddingError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent sweep configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qlmass
