// Copyright 2026 The latmin Authors
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

#ifndef LATMIN_ERROR_HPP_
#define LATMIN_ERROR_HPP_

#include <stdexcept>

namespace latmin {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument: shape mismatch, out-of-lattice point, invalid parameter.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration refused because the lattice exceeds the cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A postcondition the algorithms guarantee did not hold.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace latmin

#endif  // LATMIN_ERROR_HPP_
