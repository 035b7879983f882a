// Copyright 2026 The sqip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SQIP_ERRORS_HPP_
#define SQIP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sqip {

/// Failure category. The CLI maps each kind onto a distinct exit code.
enum class ErrorKind {
  kArgument,
  kParse,
  kInvariant,
  kSolver,
  kCapExceeded,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Bad argument: dimension mismatch, out-of-range index, invalid parameter.
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what)
      : Error(ErrorKind::kArgument, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what)
      : Error(ErrorKind::kParse, what) {}
};

/// A domain invariant does not hold (non-Hermitian state, bad Kraus set,
/// protocol wiring mismatch, ...).
class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what)
      : Error(ErrorKind::kInvariant, what) {}
};

class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what)
      : Error(ErrorKind::kSolver, what) {}
};

class CapExceededError : public Error {
 public:
  explicit CapExceededError(const std::string& what)
      : Error(ErrorKind::kCapExceeded, what) {}
};

}  // namespace sqip

#endif  // SQIP_ERRORS_HPP_
