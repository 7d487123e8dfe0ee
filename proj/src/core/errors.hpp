// Copyright 2026 The plcvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace plcvlc {

enum class ErrorKind {
  Domain,      // argument outside an operation's precondition
  Parse,       // malformed config text or sweep spec
  Validation,  // config value violates a model invariant
  Conflict,    // mutually inconsistent config keys
  Numerical,   // evaluation produced a non-finite or out-of-range result
  FitFailure,  // lognormal-sum fit did not reach its error budget
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace plcvlc
