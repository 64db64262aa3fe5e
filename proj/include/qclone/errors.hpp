// Copyright 2026 The qclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qclone {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SymmetryError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Raised when a matrix that must be positive semidefinite has an eigenvalue
/// below the allowed tolerance. Carries the offending eigenvalue.
class NotPSDError : public Error {
 public:
  NotPSDError(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

class SingularError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Linear dependence detected in a state set.
class RankError : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnitarityError : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class ModeError : public Error {
 public:
  using Error::Error;
};

/// A computed object failed one of its defining identities.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// A machine specification whose success probabilities violate the
/// positivity constraint. Carries the minimum residual eigenvalue.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// Input text could not be parsed. `locator` names the line or field.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string locator)
      : Error(locator + ": " + what), locator_(std::move(locator)) {}
  const std::string& locator() const noexcept { return locator_; }

 private:
  std::string locator_;
};

}  // namespace qclone
