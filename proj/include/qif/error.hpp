//
// Copyright 2026 The topics-qif Authors
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
//

#ifndef QIF_ERROR_HPP_
#define QIF_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace qif {

// Bad call arguments: mismatched labels, out-of-range parameters, and so on.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A matrix that fails the channel invariants (negative entry, row sum != 1).
class InvalidChannel : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// File or stream problems, distinct from validation failures.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Synthetic population could not satisfy its structural guarantees.
class GenerationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qif

#endif  // QIF_ERROR_HPP_
