#pragma once

#include <stdexcept>
#include <string>

namespace avlc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments or unsupported parameter combinations.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data (files, tables, streams).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failures; the message carries the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

class UnsupportedSizeError : public UsageError {
 public:
  using UsageError::UsageError;
};

class EmptyDistributionError : public DataError {
 public:
  using DataError::DataError;
};

class NoFeasibleCodeError : public DataError {
 public:
  using DataError::DataError;
};

class CorruptStreamError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace avlc
