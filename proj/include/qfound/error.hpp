// Copyright 2026 The qfound Authors
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

namespace qfound {

/** Base class of every error raised by the library. */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Caller supplied a value outside an operation's domain. */
class InputError : public Error {
 public:
  using Error::Error;
};

/** Operand shapes do not match (e.g. a 2x2 observable against a 4x4 state). */
class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

/** An expectation functional that cannot come from any normalized ensemble. */
class MalformedEnsembleError : public InputError {
 public:
  using InputError::InputError;
};

/** A construction failed its own post-condition check. */
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfound
