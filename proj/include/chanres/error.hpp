// Copyright 2026 The chanres Authors
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

namespace chanres {

// Base of every exception thrown by the library. The C API maps each
// subclass onto a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes or subsystem dimensions do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An input violates a mathematical precondition (not Hermitian, not
// trace preserving, not unitary, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed external input (JSON files, flags).
class ParseError : public Error {
 public:
  using Error::Error;
};

// An iterative routine failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A file could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace chanres
