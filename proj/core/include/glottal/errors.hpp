// Copyright 2026 The Glottal Authors
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
#include <vector>

namespace glottal {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad length, out-of-range value).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// The input carries no usable information (all-zero pulse, empty VTF, ...).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed: rank deficiency, non-convergence, log of zero.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A whole-utterance analysis could not produce a usable result.
class AnalysisError : public Error {
 public:
  using Error::Error;
};

/// Collects non-fatal warnings. Functions take an optional pointer; null drops them.
struct Diagnostics {
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
  bool empty() const { return warnings.empty(); }
};

inline void warn(Diagnostics* diag, std::string message) {
  if (diag != nullptr) diag->warn(std::move(message));
}

}  // namespace glottal
