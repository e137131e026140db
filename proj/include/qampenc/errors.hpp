// Copyright 2026 The qampenc developers
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

namespace qampenc {

/**
 * Base class for all qampenc exceptions.
 */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

/** Invalid user input or parameters. Maps to CLI exit code 2. */
class ValidationError : public Error {
 public:
  using Error::Error;
};

/** A library-internal invariant was violated. Maps to CLI exit code 3. */
class InternalError : public Error {
 public:
  using Error::Error;
};

class ZeroVectorError : public ValidationError {
 public:
  ZeroVectorError() : ValidationError("zero vector") {}
};

class UseComplexSplitError : public ValidationError {
 public:
  UseComplexSplitError()
      : ValidationError(
            "input has complex entries; use split_complex instead") {}
};

class PrecisionTooLowError : public ValidationError {
 public:
  explicit PrecisionTooLowError(int L)
      : ValidationError("precision L=" + std::to_string(L) +
                        " too low (need L >= 2)") {}
};

class BadIndexError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BadShapeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ImpossibleOutcomeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BadParallelismError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BadDensityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BadStateError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BadGridError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class TooLargeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/** Uncomputation left an ancilla register dirty; signals a construction bug. */
class UncomputeLeakError : public InternalError {
 public:
  using InternalError::InternalError;
};

}  // namespace qampenc
