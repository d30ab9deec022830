// Copyright 2026 The ginoe-clt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GINOE_ERRORS_HPP
#define GINOE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ginoe {

// Base of every error thrown by the library. The CLI maps ValidationError
// subclasses to exit code 2 and everything else to a generic failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed domains, out-of-range parameters, wrong shapes.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class InvalidDomain : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class RangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class StructureError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateInput : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ProfileError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InsufficientSamples : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Argument outside the region where an approximation is valid.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Floating-point evaluation would overflow.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class AccuracyError : public Error {
 public:
  using Error::Error;
};

class ConditioningError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  SolverError(const std::string& what, unsigned long long seed)
      : Error(what + " (seed " + std::to_string(seed) + ")"), seed_(seed) {}

  unsigned long long seed() const noexcept { return seed_; }

 private:
  unsigned long long seed_;
};

}  // namespace ginoe

#endif  // GINOE_ERRORS_HPP
