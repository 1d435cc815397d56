// Copyright 2026 The VISER Authors
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

#ifndef VISER_ERROR_H_
#define VISER_ERROR_H_

#include <stdexcept>
#include <string>

namespace viser {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Malformed game, strategy or file contents.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A computation needs information the caller's player does not hold, e.g.
// the exploiter's payoffs when only the victim's are attached.
class InformationError : public Error {
 public:
  using Error::Error;
};

// The simplex exceeded its pivot budget.
class SolverStallError : public Error {
 public:
  using Error::Error;
};

// The exploiter LP came back unbounded even after widening the maximin slack,
// which means the computed victim polytope is numerically empty.
class NumericEmptySetError : public Error {
 public:
  using Error::Error;
};

// Instance exceeds the size limits of a brute-force oracle.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

}  // namespace viser

#endif  // VISER_ERROR_H_
