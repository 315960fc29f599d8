// Copyright the stbench authors. Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <stdexcept>
#include <string>

namespace stbench {

// Base of the suite's error hierarchy. The CLI maps subclasses onto its
// stable exit codes: configuration/validation/parse problems exit 1, runtime
// failures (I/O, adapter state, anything else) exit 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration values, unknown registry names, duplicate registrations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Data that violates a documented invariant (datasets, logs, reports).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed textual input; the message carries the location.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Stream or file failures.
class IoError : public Error {
 public:
  using Error::Error;
};

// Adapter lifecycle misuse (execute before load, use after teardown).
class StateError : public Error {
 public:
  using Error::Error;
};

// Operation not applicable to its argument (write query on a read-only path,
// query kind a dialect cannot express).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace stbench
