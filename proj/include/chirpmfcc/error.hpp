// Copyright 2026 The chirpmfcc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHIRPMFCC_ERROR_HPP_
#define CHIRPMFCC_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace chirpmfcc {

// Bad input: precondition violations, malformed files, unsupported formats.
// The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure on otherwise valid input (degenerate frames, root finder
// non-convergence). The CLI maps these to exit code 1.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace chirpmfcc

#endif  // CHIRPMFCC_ERROR_HPP_
